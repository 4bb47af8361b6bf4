#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "dcm/dense_matrix.hpp"
#include "dcm/error.hpp"
#include "dcm/scalar.hpp"

namespace dcm {

/// n×n matrix with `a` on the diagonal and `t` everywhere else, i.e.
/// (a - t)·I + t·1. Only the three parameters are stored; the spectrum is
/// always derived from them.
template <Scalar Real = double>
class DoubleConstant {
 public:
  using value_type = Real;

  DoubleConstant(std::size_t n, Real a, Real t) : n_(n), a_(std::move(a)), t_(std::move(t)) {
    if (n_ == 0) throw domain_error("DoubleConstant: dimension n must be at least 1");
    if (!is_finite(a_) || !is_finite(t_)) {
      throw domain_error("DoubleConstant: constants a and t must be finite");
    }
  }

  static DoubleConstant identity(std::size_t n) { return {n, Real(1), Real(0)}; }
  static DoubleConstant zero(std::size_t n) { return {n, Real(0), Real(0)}; }
  static DoubleConstant ones(std::size_t n) { return {n, Real(1), Real(1)}; }

  /// I - 1/n: subtracts the sample mean from a vector.
  static DoubleConstant centering(std::size_t n) {
    if (n == 0) throw domain_error("DoubleConstant: dimension n must be at least 1");
    const Real inv = Real(1) / Real(n);
    return {n, Real(1) - inv, Real(-inv)};
  }

  std::size_t n() const noexcept { return n_; }
  const Real& a() const noexcept { return a_; }
  const Real& t() const noexcept { return t_; }

  /// λ* = a - t, multiplicity n - 1 (vacuous when n = 1).
  Real lambda_major() const { return a_ - t_; }
  /// λ** = a - t + n·t, multiplicity 1, eigenvector 1.
  Real lambda_minor() const { return (a_ - t_) + Real(n_) * t_; }

  friend bool operator==(const DoubleConstant&, const DoubleConstant&) = default;

  friend std::ostream& operator<<(std::ostream& os, const DoubleConstant& m) {
    return os << "M(n=" << m.n_ << ", a=" << m.a_ << ", t=" << m.t_ << ")";
  }

 private:
  std::size_t n_;
  Real a_;
  Real t_;
};

/// Eigenvalue-space view of a DoubleConstant.
template <Scalar Real = double>
struct CanonicalForm {
  std::size_t n;
  Real lambda_major;  // λ*, multiplicity n - 1
  Real lambda_minor;  // λ**, multiplicity 1

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

enum class MatrixClass {
  Zero,
  NonZeroConstant,
  ScaledIdentity,
  CenteringProportional,
  PositiveDefinite,
  NegativeDefinite,
  Indefinite,
};

constexpr std::string_view to_string(MatrixClass c) noexcept {
  switch (c) {
    case MatrixClass::Zero: return "Zero";
    case MatrixClass::NonZeroConstant: return "NonZeroConstant";
    case MatrixClass::ScaledIdentity: return "ScaledIdentity";
    case MatrixClass::CenteringProportional: return "CenteringProportional";
    case MatrixClass::PositiveDefinite: return "PositiveDefinite";
    case MatrixClass::NegativeDefinite: return "NegativeDefinite";
    case MatrixClass::Indefinite: return "Indefinite";
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, MatrixClass c) { return os << to_string(c); }

template <Scalar Real>
CanonicalForm<Real> eigenvalues(const DoubleConstant<Real>& m) {
  return {m.n(), m.lambda_major(), m.lambda_minor()};
}

/// Inverse of `eigenvalues`: a = (λ** + (n-1)λ*)/n, t = (λ** - λ*)/n.
template <Scalar Real>
DoubleConstant<Real> from_eigenvalues(const CanonicalForm<Real>& c) {
  if (c.n == 0) throw domain_error("from_eigenvalues: dimension n must be at least 1");
  const Real n(c.n);
  const Real a = (c.lambda_minor + Real(c.n - 1) * c.lambda_major) / n;
  const Real t = (c.lambda_minor - c.lambda_major) / n;
  return {c.n, a, t};
}

/// det = λ*^(n-1)·λ**. Overflow yields ±infinity for floating types.
template <Scalar Real>
Real determinant(const DoubleConstant<Real>& m) {
  return power_of(m.lambda_major(), m.n() - 1) * m.lambda_minor();
}

/// p(λ) = det(M - λI) = (λ* - λ)^(n-1)·(λ** - λ).
template <Scalar Real>
Real char_poly(const DoubleConstant<Real>& m, const Real& lambda) {
  return power_of(Real(m.lambda_major() - lambda), m.n() - 1) * Real(m.lambda_minor() - lambda);
}

template <Scalar Real>
Real trace(const DoubleConstant<Real>& m) {
  return Real(m.n()) * m.a();
}

/// Partition label. A quantity counts as zero when its magnitude is at most
/// `tol`. For n = 1 only λ** = a is a genuine eigenvalue, so a nonzero 1×1
/// matrix is a ScaledIdentity.
template <Scalar Real>
MatrixClass classify(const DoubleConstant<Real>& m, const Real& tol = Real(0)) {
  if (tol < Real(0)) throw domain_error("classify: tolerance must be nonnegative");
  auto is_zero = [&](const Real& v) { return !(tol < abs_value(v)); };

  if (m.n() == 1) {
    return is_zero(m.a()) ? MatrixClass::Zero : MatrixClass::ScaledIdentity;
  }
  const Real major = m.lambda_major();
  const Real minor = m.lambda_minor();
  if (is_zero(m.a()) && is_zero(m.t())) return MatrixClass::Zero;
  if (is_zero(major)) return MatrixClass::NonZeroConstant;
  if (is_zero(m.t())) return MatrixClass::ScaledIdentity;
  if (is_zero(minor)) return MatrixClass::CenteringProportional;
  const bool major_pos = Real(0) < major;
  const bool minor_pos = Real(0) < minor;
  if (major_pos && minor_pos) return MatrixClass::PositiveDefinite;
  if (!major_pos && !minor_pos) return MatrixClass::NegativeDefinite;
  return MatrixClass::Indefinite;
}

template <Scalar Real>
std::size_t rank(const DoubleConstant<Real>& m, const Real& tol = Real(0)) {
  switch (classify(m, tol)) {
    case MatrixClass::Zero: return 0;
    case MatrixClass::NonZeroConstant: return 1;
    case MatrixClass::CenteringProportional: return m.n() - 1;
    default: return m.n();
  }
}

template <Scalar Real>
DenseMatrix<Real> materialize(const DoubleConstant<Real>& m) {
  DenseMatrix<Real> out(m.n(), m.n(), m.t());
  for (std::size_t i = 0; i < m.n(); ++i) out(i, i) = m.a();
  return out;
}

/// M·x in O(n): λ*·x + t·(Σx)·1.
template <Scalar Real>
std::vector<Real> apply(const DoubleConstant<Real>& m, std::span<const Real> x) {
  if (x.size() != m.n()) {
    throw dimension_error("apply: vector length " + std::to_string(x.size()) +
                          " does not match n = " + std::to_string(m.n()));
  }
  Real sum(0);
  for (const auto& v : x) sum += v;
  const Real major = m.lambda_major();
  const Real shift = m.t() * sum;
  std::vector<Real> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = major * x[i] + shift;
  return out;
}

/// Weights (A, T) with M = A·b1 + T·b2.
template <Scalar Real>
struct BasisWeights {
  Real first;
  Real second;
};

/// Expresses `m` over any two non-proportional double-constant matrices.
template <Scalar Real>
BasisWeights<Real> decompose_in_basis(const DoubleConstant<Real>& m, const DoubleConstant<Real>& b1,
                                      const DoubleConstant<Real>& b2) {
  if (b1.n() != m.n() || b2.n() != m.n()) {
    throw dimension_error("decompose_in_basis: basis matrices must share n with the target");
  }
  const Real cross = b1.a() * b2.t() - b2.a() * b1.t();
  bool degenerate = cross == Real(0);
  if constexpr (std::is_floating_point_v<Real>) {
    const Real scale = abs_value(Real(b1.a() * b2.t())) + abs_value(Real(b2.a() * b1.t()));
    degenerate = abs_value(cross) <= std::numeric_limits<Real>::epsilon() * scale;
  }
  if (degenerate) {
    throw proportional_basis_error("decompose_in_basis: basis matrices are proportional (a1*t2 - a2*t1 = 0)");
  }
  return {(m.a() * b2.t() - b2.a() * m.t()) / cross, (b1.a() * m.t() - m.a() * b1.t()) / cross};
}

/// Canonical weights M = λ*·C + λ**·(1/n), together with the equivalent
/// weights on the limiting equicorrelation matrices
/// M = ((n-1)/n)·λ*·M(1, -1/(n-1)) + (1/n)·λ**·M(1, 1).
template <Scalar Real>
struct CanonicalWeights {
  Real centering;    // weight on C = M(1 - 1/n, -1/n)
  Real mean;         // weight on 1/n = M(1/n, 1/n)
  Real lower_limit;  // weight on M(1, -1/(n-1)); zero when n = 1
  Real upper_limit;  // weight on M(1, 1)
};

template <Scalar Real>
CanonicalWeights<Real> decompose_canonical(const DoubleConstant<Real>& m) {
  const Real n(m.n());
  const Real major = m.lambda_major();
  const Real minor = m.lambda_minor();
  return {major, minor, Real(m.n() - 1) / n * major, minor / n};
}

/// M(1, -1/(n-1)), the limit of the equicorrelation matrix as ρ → -1/(n-1).
template <Scalar Real = double>
DoubleConstant<Real> lower_limit_equicorrelation(std::size_t n) {
  if (n < 2) throw domain_error("lower_limit_equicorrelation: requires n >= 2");
  return {n, Real(1), Real(-(Real(1) / Real(n - 1)))};
}

/// M(1, 1), the limit of the equicorrelation matrix as ρ → 1.
template <Scalar Real = double>
DoubleConstant<Real> upper_limit_equicorrelation(std::size_t n) {
  return DoubleConstant<Real>::ones(n);
}

}  // namespace dcm
