#pragma once

// Dense reference implementations. These exist to check the structured
// routines and are deliberately textbook: no blocking, partial pivoting only.
// Nothing in the structured library calls into this header.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dcm/dense_matrix.hpp"
#include "dcm/error.hpp"
#include "dcm/random.hpp"

namespace dcm::oracle {

template <class Real>
DenseMatrix<Real> dense_matmul(const DenseMatrix<Real>& a, const DenseMatrix<Real>& b) {
  if (a.cols() != b.rows()) {
    throw dimension_error("dense_matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                          std::to_string(b.rows()) + " differ");
  }
  DenseMatrix<Real> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Real aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

template <class Real>
std::vector<Real> dense_matvec(const DenseMatrix<Real>& a, std::span<const Real> x) {
  if (a.cols() != x.size()) throw dimension_error("dense_matvec: dimension mismatch");
  std::vector<Real> y(a.rows(), Real(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  }
  return y;
}

template <class Real>
DenseMatrix<Real> dense_transpose(const DenseMatrix<Real>& a) {
  DenseMatrix<Real> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

/// k·a + b, entrywise.
template <class Real>
DenseMatrix<Real> dense_axpy(Real k, const DenseMatrix<Real>& a, const DenseMatrix<Real>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("dense_axpy: shapes differ");
  DenseMatrix<Real> out = b;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += k * a(i, j);
  }
  return out;
}

template <class Real>
Real max_abs(const DenseMatrix<Real>& a) {
  Real worst(0);
  for (const Real& v : a.data()) worst = std::max<Real>(worst, v < Real(0) ? Real(-v) : v);
  return worst;
}

/// Determinant by LU with partial pivoting (sign-tracked pivot product).
inline double dense_det(DenseMatrix<double> a) {
  if (a.rows() != a.cols()) throw dimension_error("dense_det: matrix is not square");
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    }
    if (a(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

/// Solves a·x = b by Gaussian elimination with partial pivoting. A pivot at
/// or below 1e-12·max|a| is treated as singular.
inline std::vector<double> dense_solve(DenseMatrix<double> a, std::vector<double> b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw dimension_error("dense_solve: dimension mismatch");
  const std::size_t n = a.rows();
  const double threshold = 1e-12 * max_abs(a);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    }
    if (std::abs(a(p, k)) <= threshold) throw singular_matrix_error("dense_solve: matrix is singular");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  return x;
}

/// Gauss–Jordan inverse with partial pivoting.
inline DenseMatrix<double> dense_inverse(DenseMatrix<double> a) {
  if (a.rows() != a.cols()) throw dimension_error("dense_inverse: matrix is not square");
  const std::size_t n = a.rows();
  const double threshold = 1e-12 * max_abs(a);
  auto inv = DenseMatrix<double>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    }
    if (std::abs(a(p, k)) <= threshold) throw singular_matrix_error("dense_inverse: matrix is singular");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    }
    const double pivot = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = a(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

/// Rank by Gaussian elimination with partial pivoting; a pivot at or below
/// tol·max(1, max|a|) counts as zero.
inline std::size_t dense_rank(DenseMatrix<double> a, double tol = 1e-10) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const double threshold = tol * std::max(1.0, max_abs(a));
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (std::abs(a(i, c)) > std::abs(a(p, c))) p = i;
    }
    if (std::abs(a(p, c)) <= threshold) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      const double f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
inline std::vector<double> dense_symmetric_eigenvalues(DenseMatrix<double> a, int max_sweeps = 100) {
  if (a.rows() != a.cols()) throw dimension_error("dense_symmetric_eigenvalues: matrix is not square");
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Matrix exponential by scaling and squaring with a degree-24 Taylor
/// polynomial on a/2^s, ‖a/2^s‖_∞ ≤ 1/2. Error stays below 1e-10 (relative
/// to the largest entry of the result) for ‖a‖ ≤ 10.
inline DenseMatrix<double> dense_expm(const DenseMatrix<double>& a) {
  if (a.rows() != a.cols()) throw dimension_error("dense_expm: matrix is not square");
  const std::size_t n = a.rows();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
    norm = std::max(norm, row);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  DenseMatrix<double> scaled = a;
  const double factor = std::ldexp(1.0, -squarings);
  for (double& v : scaled.data()) v *= factor;

  auto result = DenseMatrix<double>::identity(n);
  auto term = DenseMatrix<double>::identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = dense_matmul(term, scaled);
    for (double& v : term.data()) v /= static_cast<double>(k);
    result = dense_axpy(1.0, term, result);
  }
  for (int s = 0; s < squarings; ++s) result = dense_matmul(result, result);
  return result;
}

using ComplexDense = std::vector<std::complex<double>>;

/// Row-major n×n complex product.
inline ComplexDense complex_matmul(const ComplexDense& a, const ComplexDense& b, std::size_t n) {
  if (a.size() != n * n || b.size() != n * n) throw dimension_error("complex_matmul: size mismatch");
  ComplexDense c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto aik = a[i * n + k];
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  }
  return c;
}

inline ComplexDense complex_conjugate(ComplexDense a) {
  for (auto& z : a) z = std::conj(z);
  return a;
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

struct MonteCarloResult {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Draws X = μ·1 + σ·Σ_ρ·ε for `trials` samples, Σ_ρ the principal root of
/// M(1, ρ) and ε standard normal, and averages `statistic(X)`. Trial i reads
/// normals i·n … i·n + n - 1 of CounterRng(seed).
inline MonteCarloResult monte_carlo_mean(std::size_t n, double sigma, double rho, std::size_t trials,
                                         std::uint64_t seed,
                                         const std::function<double(std::span<const double>)>& statistic,
                                         double mu = 0.0) {
  if (n == 0) throw domain_error("monte_carlo_mean: n must be positive");
  if (trials < 1000) throw domain_error("monte_carlo_mean: need at least 1000 trials");
  if (!(sigma >= 0.0)) throw domain_error("monte_carlo_mean: sigma must be nonnegative");
  if (!(rho < 1.0) || (n > 1 && !(rho > -1.0 / static_cast<double>(n - 1)))) {
    throw domain_error("monte_carlo_mean: rho outside (-1/(n-1), 1)");
  }
  const double nd = static_cast<double>(n);
  const double root_major = std::sqrt(1.0 - rho);
  const double root_minor = std::sqrt(1.0 - rho + nd * rho);
  const double root_shift = (root_minor - root_major) / nd;

  const CounterRng rng(seed);
  std::vector<double> eps(n);
  std::vector<double> x(n);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    double eps_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      eps[i] = rng.normal(trial * n + i);
      eps_sum += eps[i];
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = mu + sigma * (root_major * eps[i] + root_shift * eps_sum);
    const double v = statistic(x);
    sum += v;
    sum_sq += v * v;
  }
  const double count = static_cast<double>(trials);
  const double mean = sum / count;
  const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
  return {mean, std::sqrt(var / count)};
}

/// Monte Carlo mean of ‖X - X̄‖², computed without the library's centering.
inline MonteCarloResult monte_carlo_mean_ss(std::size_t n, double sigma, double rho, std::size_t trials,
                                            std::uint64_t seed) {
  return monte_carlo_mean(n, sigma, rho, trials, seed, [](std::span<const double> x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return ss;
  });
}

}  // namespace dcm::oracle
