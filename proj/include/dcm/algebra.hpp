#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dcm/dense_matrix.hpp"
#include "dcm/double_constant.hpp"
#include "dcm/error.hpp"
#include "dcm/scalar.hpp"

namespace dcm {

// ---------------------------------------------------------------------------
// Closure under linear combination and product
// ---------------------------------------------------------------------------

template <Scalar Real>
struct Term {
  Real kappa;
  DoubleConstant<Real> matrix;
};

namespace detail {

template <class Range>
std::size_t shared_dimension(const Range& items, const char* op, auto&& dim_of) {
  if (std::empty(items)) throw empty_input_error(std::string(op) + ": sequence is empty");
  const std::size_t n = dim_of(*std::begin(items));
  for (const auto& item : items) {
    if (dim_of(item) != n) {
      throw dimension_error(std::string(op) + ": matrices have different dimensions (" + std::to_string(n) +
                            " vs " + std::to_string(dim_of(item)) + ")");
    }
  }
  return n;
}

}  // namespace detail

/// Σκᵢ·M(aᵢ, tᵢ) = M(Σκᵢaᵢ, Σκᵢtᵢ).
template <Scalar Real>
DoubleConstant<Real> linear_combination(std::span<const Term<Real>> terms) {
  const std::size_t n =
      detail::shared_dimension(terms, "linear_combination", [](const Term<Real>& x) { return x.matrix.n(); });
  Real a(0);
  Real t(0);
  for (const auto& term : terms) {
    a += term.kappa * term.matrix.a();
    t += term.kappa * term.matrix.t();
  }
  return {n, a, t};
}

template <Scalar Real>
DoubleConstant<Real> linear_combination(std::initializer_list<Term<Real>> terms) {
  return linear_combination(std::span<const Term<Real>>(terms.begin(), terms.size()));
}

/// Product of commuting factors: eigenvalues multiply.
template <Scalar Real>
DoubleConstant<Real> product(std::span<const DoubleConstant<Real>> factors) {
  const std::size_t n =
      detail::shared_dimension(factors, "product", [](const DoubleConstant<Real>& x) { return x.n(); });
  Real major(1);
  Real minor(1);
  for (const auto& f : factors) {
    major *= f.lambda_major();
    minor *= f.lambda_minor();
  }
  return from_eigenvalues(CanonicalForm<Real>{n, major, minor});
}

template <Scalar Real>
DoubleConstant<Real> product(std::initializer_list<DoubleConstant<Real>> factors) {
  return product(std::span<const DoubleConstant<Real>>(factors.begin(), factors.size()));
}

template <Scalar Real>
DoubleConstant<Real> operator+(const DoubleConstant<Real>& x, const DoubleConstant<Real>& y) {
  return linear_combination<Real>({{Real(1), x}, {Real(1), y}});
}

template <Scalar Real>
DoubleConstant<Real> operator-(const DoubleConstant<Real>& x, const DoubleConstant<Real>& y) {
  return linear_combination<Real>({{Real(1), x}, {Real(-1), y}});
}

template <Scalar Real>
DoubleConstant<Real> operator*(const Real& k, const DoubleConstant<Real>& x) {
  return {x.n(), Real(k * x.a()), Real(k * x.t())};
}

template <Scalar Real>
DoubleConstant<Real> operator*(const DoubleConstant<Real>& x, const DoubleConstant<Real>& y) {
  return product<Real>({x, y});
}

// ---------------------------------------------------------------------------
// Analytic functions
// ---------------------------------------------------------------------------

/// Scalar function applied to the two eigenvalues, with the set on which it
/// is defined. `name` appears in domain-error messages.
struct AnalyticSpec {
  std::function<double(double)> f;
  std::function<bool(double)> domain = [](double) { return true; };
  std::string name = "f";
};

/// f(M(a, t)) = f(λ*)·I + (f(λ**) - f(λ*))/n·1.
///
/// For n = 1, λ* has multiplicity zero; if it falls outside the domain it is
/// ignored and the result is the 1×1 matrix f(a).
inline DoubleConstant<double> apply_analytic(const DoubleConstant<double>& m, const AnalyticSpec& spec) {
  const double major = m.lambda_major();
  const double minor = m.lambda_minor();
  if (!spec.domain(minor)) {
    throw domain_error(spec.name + ": minor eigenvalue lambda** = " + detail::show(minor) +
                       " is outside the domain");
  }
  const double f_minor = spec.f(minor);
  double f_major;
  if (spec.domain(major)) {
    f_major = spec.f(major);
  } else if (m.n() == 1) {
    f_major = f_minor;
  } else {
    throw domain_error(spec.name + ": major eigenvalue lambda* = " + detail::show(major) +
                       " is outside the domain");
  }
  const double n = static_cast<double>(m.n());
  return {m.n(), (f_minor + (n - 1.0) * f_major) / n, (f_minor - f_major) / n};
}

/// Integer power by repeated eigenvalue multiplication. Nonnegative exponents
/// are defined for every matrix (M^0 = I); negative exponents need both
/// eigenvalues nonzero.
template <Scalar Real>
DoubleConstant<Real> integer_power(const DoubleConstant<Real>& m, std::int64_t k) {
  const std::size_t n = m.n();
  const Real major = m.lambda_major();
  const Real minor = m.lambda_minor();
  if (k >= 0) {
    const auto e = static_cast<std::uint64_t>(k);
    return from_eigenvalues(CanonicalForm<Real>{n, dcm::ipow(major, e), dcm::ipow(minor, e)});
  }
  if (minor == Real(0)) throw singular_matrix_error("power: minor eigenvalue lambda** = 0 under a negative power");
  if (n > 1 && major == Real(0)) {
    throw singular_matrix_error("power: major eigenvalue lambda* = 0 under a negative power");
  }
  const auto e = static_cast<std::uint64_t>(-(k + 1)) + 1u;
  const Real inv_major = n > 1 ? Real(Real(1) / dcm::ipow(major, e)) : Real(0);
  const Real inv_minor = Real(1) / dcm::ipow(minor, e);
  if (n == 1) return {1, inv_minor, Real(0)};
  return from_eigenvalues(CanonicalForm<Real>{n, inv_major, inv_minor});
}

/// M^y. Integer y goes through `integer_power`; fractional y requires
/// positive eigenvalues.
inline DoubleConstant<double> power(const DoubleConstant<double>& m, double y) {
  if (!std::isfinite(y)) throw domain_error("power: exponent must be finite");
  if (std::trunc(y) == y && std::abs(y) < 9.0e15) {
    return integer_power(m, static_cast<std::int64_t>(y));
  }
  return apply_analytic(m, {[y](double x) { return std::pow(x, y); }, [](double x) { return x > 0.0; },
                            "power(" + detail::show(y) + ")"});
}

/// M^-1 = λ*^-1·I + (λ**^-1 - λ*^-1)/n·1.
template <Scalar Real>
DoubleConstant<Real> inverse(const DoubleConstant<Real>& m) {
  if (m.lambda_minor() == Real(0)) {
    throw singular_matrix_error("inverse: minor eigenvalue lambda** = 0, matrix is singular");
  }
  if (m.n() > 1 && m.lambda_major() == Real(0)) {
    throw singular_matrix_error("inverse: major eigenvalue lambda* = 0, matrix is singular");
  }
  return integer_power(m, -1);
}

inline DoubleConstant<double> sqrt_principal(const DoubleConstant<double>& m) {
  return apply_analytic(m, {[](double x) { return std::sqrt(x); }, [](double x) { return x >= 0.0; }, "sqrt"});
}

inline DoubleConstant<double> exp_m(const DoubleConstant<double>& m) {
  return apply_analytic(m, {[](double x) { return std::exp(x); }, [](double) { return true; }, "exp"});
}

/// Principal logarithm in the unfactored form ln λ*·I + (ln λ** - ln λ*)/n·1,
/// which stays defined at λ* = 1.
inline DoubleConstant<double> log_m(const DoubleConstant<double>& m) {
  return apply_analytic(m, {[](double x) { return std::log(x); }, [](double x) { return x > 0.0; }, "log"});
}

// ---------------------------------------------------------------------------
// Block decomposition
// ---------------------------------------------------------------------------

/// Ordered positive block sizes n₁, …, n_k.
class Partition {
 public:
  explicit Partition(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw empty_input_error("Partition: needs at least one block");
    for (std::size_t b : blocks_) {
      if (b == 0) throw domain_error("Partition: block sizes must be positive");
    }
  }

  std::span<const std::size_t> blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  std::size_t operator[](std::size_t i) const { return blocks_[i]; }
  std::size_t total() const { return std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0}); }

  /// Offset of the first row of block `i`.
  std::size_t offset(std::size_t i) const {
    return std::accumulate(blocks_.begin(), blocks_.begin() + static_cast<std::ptrdiff_t>(i), std::size_t{0});
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> blocks_;
};

template <Scalar Real>
struct BlockDecomposition {
  std::vector<DoubleConstant<Real>> diagonal_blocks;
  DenseMatrix<Real> remainder;
  Partition partition;

  /// Block-diagonal of `diagonal_blocks` plus `remainder`.
  DenseMatrix<Real> assemble() const {
    DenseMatrix<Real> out = remainder;
    for (std::size_t b = 0; b < partition.size(); ++b) {
      const std::size_t off = partition.offset(b);
      const auto& blk = diagonal_blocks[b];
      for (std::size_t i = 0; i < blk.n(); ++i) {
        for (std::size_t j = 0; j < blk.n(); ++j) {
          out(off + i, off + j) += i == j ? blk.a() : blk.t();
        }
      }
    }
    return out;
  }
};

/// Splits M(a, t) into diag(M_ℓ(a_ℓ, t_ℓ)) plus a remainder whose diagonal
/// blocks are M_ℓ(a - a_ℓ, t - t_ℓ) and whose off-diagonal blocks are t·1.
template <Scalar Real>
BlockDecomposition<Real> block_decompose(const DoubleConstant<Real>& m, const Partition& p,
                                         std::span<const std::pair<Real, Real>> inner_constants) {
  if (p.total() != m.n()) {
    throw dimension_error("block_decompose: partition sums to " + std::to_string(p.total()) +
                          " but n = " + std::to_string(m.n()));
  }
  if (inner_constants.size() != p.size()) {
    throw dimension_error("block_decompose: expected " + std::to_string(p.size()) + " inner constant pairs, got " +
                          std::to_string(inner_constants.size()));
  }
  BlockDecomposition<Real> out{{}, DenseMatrix<Real>(m.n(), m.n(), m.t()), p};
  out.diagonal_blocks.reserve(p.size());
  for (std::size_t b = 0; b < p.size(); ++b) {
    const auto& [ab, tb] = inner_constants[b];
    out.diagonal_blocks.emplace_back(p[b], ab, tb);
    const Real ra = m.a() - ab;
    const Real rt = m.t() - tb;
    const std::size_t off = p.offset(b);
    for (std::size_t i = 0; i < p[b]; ++i) {
      for (std::size_t j = 0; j < p[b]; ++j) out.remainder(off + i, off + j) = i == j ? ra : rt;
    }
  }
  return out;
}

/// Inner constants (1 - 1/n_ℓ, -1/n_ℓ): splits a centering matrix into the
/// per-block centering matrices. Diagonal remainder blocks become
/// (1/n)·w_ℓ·1 with w_ℓ = (n - n_ℓ)/n_ℓ.
template <Scalar Real = double>
BlockDecomposition<Real> centering_block_decompose(const Partition& p) {
  const auto c = DoubleConstant<Real>::centering(p.total());
  std::vector<std::pair<Real, Real>> inner;
  inner.reserve(p.size());
  for (std::size_t b = 0; b < p.size(); ++b) {
    const Real inv = Real(1) / Real(p[b]);
    inner.emplace_back(Real(Real(1) - inv), Real(-inv));
  }
  return block_decompose(c, p, std::span<const std::pair<Real, Real>>(inner));
}

/// w_ℓ = (n - n_ℓ)/n_ℓ.
template <Scalar Real = double>
std::vector<Real> centering_block_weights(const Partition& p) {
  const Real n(p.total());
  std::vector<Real> w;
  w.reserve(p.size());
  for (std::size_t b = 0; b < p.size(); ++b) w.push_back(Real((n - Real(p[b])) / Real(p[b])));
  return w;
}

}  // namespace dcm
