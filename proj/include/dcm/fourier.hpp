#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "dcm/dense_matrix.hpp"
#include "dcm/double_constant.hpp"
#include "dcm/error.hpp"

namespace dcm {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Largest imaginary part tolerated when a Fourier-side result is cast back
/// to the reals.
inline constexpr double kImaginaryResidueLimit = 1e-10;

namespace detail {

/// ω_n^k = exp(-2πik/n) for k in [0, n).
inline ComplexVector twiddles(std::size_t n) {
  ComplexVector w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    w[k] = {std::cos(angle), std::sin(angle)};
  }
  return w;
}

inline void require_length(std::size_t got, std::size_t want, const char* op) {
  if (got != want) {
    throw dimension_error(std::string(op) + ": length " + std::to_string(got) + " does not match n = " +
                          std::to_string(want));
  }
}

inline double real_part_checked(const Complex& z, const char* op) {
  if (std::abs(z.imag()) > kImaginaryResidueLimit) {
    throw consistency_error(std::string(op) + ": imaginary residue " + detail::show(z.imag()) +
                            " exceeds tolerance");
  }
  return z.real();
}

}  // namespace detail

/// Unitary DFT: F_x(r) = (1/√n)·Σ_s x_s·exp(-2πirs/n). O(n²) direct sum.
inline ComplexVector dft(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw empty_input_error("dft: empty input");
  const auto w = detail::twiddles(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexVector out(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t s = 0; s < n; ++s) acc += x[s] * w[(r * s) % n];
    out[r] = acc * scale;
  }
  return out;
}

/// Inverse unitary DFT (conjugate twiddles).
inline ComplexVector inverse_dft(std::span<const Complex> z) {
  const std::size_t n = z.size();
  if (n == 0) throw empty_input_error("inverse_dft: empty input");
  const auto w = detail::twiddles(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexVector out(n);
  for (std::size_t s = 0; s < n; ++s) {
    Complex acc{0.0, 0.0};
    for (std::size_t r = 0; r < n; ++r) acc += z[r] * std::conj(w[(r * s) % n]);
    out[s] = acc * scale;
  }
  return out;
}

/// (1/n)·Σ_{k<n} exp(-2πirk/n), which equals 1 when r ≡ 0 (mod n) and 0
/// otherwise. Computed by the complex sum; the imaginary part must vanish.
inline double geometric_sum(std::size_t n, long long r) {
  if (n == 0) throw domain_error("geometric_sum: n must be positive");
  const long long nn = static_cast<long long>(n);
  const long long rr = ((r % nn) + nn) % nn;
  const auto w = detail::twiddles(n);
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) acc += w[(static_cast<std::size_t>(rr) * k) % n];
  acc /= static_cast<double>(n);
  if (std::abs(acc.imag()) > 1e-12) {
    throw consistency_error("geometric_sum: imaginary part " + detail::show(acc.imag()) + " does not vanish");
  }
  return acc.real();
}

/// Symmetric unitary matrix with entries ω_n^{jk}/√n. Entry (j, k) is read
/// from the table at index jk mod n, so symmetry is exact.
class UnitaryDFT {
 public:
  explicit UnitaryDFT(std::size_t n) : n_(n) {
    if (n == 0) throw domain_error("UnitaryDFT: n must be positive");
    table_ = detail::twiddles(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& z : table_) z *= scale;
  }

  std::size_t n() const noexcept { return n_; }
  Complex operator()(std::size_t j, std::size_t k) const { return table_[(j * k) % n_]; }

  /// Row-major n×n copy of the entries.
  std::vector<Complex> dense() const {
    std::vector<Complex> out(n_ * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) out[j * n_ + k] = (*this)(j, k);
    }
    return out;
  }

 private:
  std::size_t n_;
  ComplexVector table_;
};

struct Diagonalization {
  UnitaryDFT basis;
  std::vector<double> eigenvalues;  // (λ**, λ*, …, λ*)

  /// U·diag(Λ)·Ū as a real matrix; throws consistency_error if any
  /// imaginary part exceeds kImaginaryResidueLimit.
  DenseMatrix<double> reconstruct() const {
    const std::size_t n = basis.n();
    DenseMatrix<double> out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) acc += basis(i, k) * eigenvalues[k] * std::conj(basis(k, j));
        out(i, j) = detail::real_part_checked(acc, "Diagonalization::reconstruct");
      }
    }
    return out;
  }
};

inline Diagonalization diagonalize(const DoubleConstant<double>& m) {
  std::vector<double> lambda(m.n(), m.lambda_major());
  lambda[0] = m.lambda_minor();
  return {UnitaryDFT(m.n()), std::move(lambda)};
}

/// M·x evaluated in Fourier space, column by column: the zero-frequency
/// coefficient is scaled by λ** and every other coefficient by λ*.
inline DenseMatrix<double> apply_via_fourier(const DoubleConstant<double>& m, const DenseMatrix<double>& x) {
  detail::require_length(x.rows(), m.n(), "apply_via_fourier");
  if (x.cols() == 0) throw dimension_error("apply_via_fourier: input has no columns");
  const double major = m.lambda_major();
  const double minor = m.lambda_minor();
  DenseMatrix<double> out(x.rows(), x.cols());
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const auto column = x.col(c);
    auto spectrum = dft(column);
    spectrum[0] *= minor;
    for (std::size_t r = 1; r < spectrum.size(); ++r) spectrum[r] *= major;
    const auto back = inverse_dft(spectrum);
    for (std::size_t i = 0; i < back.size(); ++i) out(i, c) = detail::real_part_checked(back[i], "apply_via_fourier");
  }
  return out;
}

inline std::vector<double> apply_via_fourier(const DoubleConstant<double>& m, std::span<const double> x) {
  return apply_via_fourier(m, DenseMatrix<double>::column(x)).col(0);
}

/// (M₁x)·(M₂y) = λ₁**λ₂**·F_x(0)·conj(F_y(0)) + λ₁*λ₂*·Σ_{t≥1} F_x(t)·conj(F_y(t)).
inline double parseval_product(const DoubleConstant<double>& m1, const DoubleConstant<double>& m2,
                               std::span<const double> x, std::span<const double> y) {
  if (m2.n() != m1.n()) throw dimension_error("parseval_product: matrices have different dimensions");
  detail::require_length(x.size(), m1.n(), "parseval_product");
  detail::require_length(y.size(), m1.n(), "parseval_product");
  const auto fx = dft(x);
  const auto fy = dft(y);
  Complex rest{0.0, 0.0};
  for (std::size_t t = 1; t < fx.size(); ++t) rest += fx[t] * std::conj(fy[t]);
  const Complex total = m1.lambda_minor() * m2.lambda_minor() * (fx[0] * std::conj(fy[0])) +
                        m1.lambda_major() * m2.lambda_major() * rest;
  return total.real();
}

/// ‖M·x‖² = λ**²·|F_x(0)|² + λ*²·Σ_{t≥1}|F_x(t)|².
inline double plancherel_norm(const DoubleConstant<double>& m, std::span<const double> x) {
  detail::require_length(x.size(), m.n(), "plancherel_norm");
  const auto fx = dft(x);
  double rest = 0.0;
  for (std::size_t t = 1; t < fx.size(); ++t) rest += std::norm(fx[t]);
  const double major = m.lambda_major();
  const double minor = m.lambda_minor();
  return minor * minor * std::norm(fx[0]) + major * major * rest;
}

}  // namespace dcm
