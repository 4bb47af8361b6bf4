#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcm/algebra.hpp"
#include "dcm/dense_matrix.hpp"
#include "dcm/double_constant.hpp"
#include "dcm/error.hpp"
#include "dcm/fourier.hpp"

namespace dcm {

// ---------------------------------------------------------------------------
// Centering
// ---------------------------------------------------------------------------

namespace detail {

inline double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

inline void require_nonempty(const DenseMatrix<double>& x, const char* op) {
  if (x.rows() == 0 || x.cols() == 0) throw empty_input_error(std::string(op) + ": empty matrix");
}

inline std::vector<double> centered(std::span<const double> x) {
  const double mu = mean_of(x);
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v -= mu;
  return out;
}

}  // namespace detail

/// C_n·x: subtracts each column mean.
inline DenseMatrix<double> center_columns(const DenseMatrix<double>& x) {
  detail::require_nonempty(x, "center_columns");
  DenseMatrix<double> out = x;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double mu = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) mu += x(i, j);
    mu /= static_cast<double>(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out(i, j) -= mu;
  }
  return out;
}

/// x·C_m: subtracts each row mean.
inline DenseMatrix<double> center_rows(const DenseMatrix<double>& x) {
  detail::require_nonempty(x, "center_rows");
  DenseMatrix<double> out = x;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double mu = detail::mean_of(x.row(i));
    for (double& v : out.row(i)) v -= mu;
  }
  return out;
}

/// C_n·x·C_m, entrywise x_ij - x̄_i· - x̄_·j + x̄_··.
inline DenseMatrix<double> double_center(const DenseMatrix<double>& x) {
  detail::require_nonempty(x, "double_center");
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();
  std::vector<double> row_mean(n, 0.0);
  std::vector<double> col_mean(m, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      row_mean[i] += x(i, j);
      col_mean[j] += x(i, j);
      grand += x(i, j);
    }
  }
  for (double& v : row_mean) v /= static_cast<double>(m);
  for (double& v : col_mean) v /= static_cast<double>(n);
  grand /= static_cast<double>(n * m);
  DenseMatrix<double> out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) out(i, j) = x(i, j) - row_mean[i] - col_mean[j] + grand;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadratic forms
// ---------------------------------------------------------------------------

/// Σ(xᵢ - x̄)² = xᵀ·C·x.
inline double sum_of_squares(std::span<const double> x) {
  if (x.empty()) throw empty_input_error("sum_of_squares: empty vector");
  const double mu = detail::mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return ss;
}

/// Σ(xᵢ - x̄)(yᵢ - ȳ) = xᵀ·C·y.
inline double cross_products(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw dimension_error("cross_products: vectors differ in length");
  if (x.empty()) throw empty_input_error("cross_products: empty vectors");
  const double mx = detail::mean_of(x);
  const double my = detail::mean_of(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s;
}

/// (x - x̄)ᵀ·Σ⁻¹·(x - x̄). `sigma_inverse` is taken as given (symmetric
/// positive definite); tiny negative round-off is reported as zero.
inline double mahalanobis_sq(std::span<const double> x, const DenseMatrix<double>& sigma_inverse) {
  if (sigma_inverse.rows() != x.size() || sigma_inverse.cols() != x.size()) {
    throw dimension_error("mahalanobis_sq: inverse covariance must be " + std::to_string(x.size()) + "x" +
                          std::to_string(x.size()));
  }
  if (x.empty()) throw empty_input_error("mahalanobis_sq: empty vector");
  const auto xc = detail::centered(x);
  double q = 0.0;
  for (std::size_t i = 0; i < xc.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < xc.size(); ++j) row += sigma_inverse(i, j) * xc[j];
    q += xc[i] * row;
  }
  return std::max(q, 0.0);
}

// ---------------------------------------------------------------------------
// Regression annihilator
// ---------------------------------------------------------------------------

struct CenteredFit {
  std::vector<double> coefficients;  // slopes on the raw explanatory columns
  double intercept = 0.0;
  std::vector<double> residuals;     // (I - H)·y
};

namespace detail {

/// Solves the symmetric system g·β = b by Gaussian elimination with partial
/// pivoting. A pivot below 1e-10 × (largest diagonal of g) means the
/// columns are dependent.
inline std::vector<double> solve_gram(DenseMatrix<double> g, std::vector<double> b) {
  const std::size_t m = b.size();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < m; ++i) max_diag = std::max(max_diag, std::abs(g(i, i)));
  const double threshold = 1e-10 * max_diag;
  if (max_diag == 0.0 && m > 0) throw rank_deficient_error("annihilator: centered design has a zero column");
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < m; ++i) {
      if (std::abs(g(i, k)) > std::abs(g(p, k))) p = i;
    }
    if (std::abs(g(p, k)) <= threshold) {
      throw rank_deficient_error("annihilator: centered design is rank deficient (pivot " +
                                 detail::show(std::abs(g(p, k))) + " at column " + std::to_string(k) + ")");
    }
    if (p != k) {
      for (std::size_t j = 0; j < m; ++j) std::swap(g(k, j), g(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      const double f = g(i, k) / g(k, k);
      for (std::size_t j = k; j < m; ++j) g(i, j) -= f * g(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> beta(m);
  for (std::size_t k = m; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < m; ++j) s -= g(k, j) * beta[j];
    beta[k] = s / g(k, k);
  }
  return beta;
}

}  // namespace detail

/// Least squares with an intercept, solved on the centered design
/// x_c = C·x: β̂ = (x_cᵀx_c)⁻¹x_cᵀy and r = C·y - x_c·β̂.
inline CenteredFit centered_least_squares(std::span<const double> y, const DenseMatrix<double>& x) {
  const std::size_t n = y.size();
  if (n == 0) throw empty_input_error("centered_least_squares: empty response");
  if (x.rows() != n) {
    throw dimension_error("centered_least_squares: design has " + std::to_string(x.rows()) + " rows, response has " +
                          std::to_string(n));
  }
  const std::size_t m = x.cols();
  if (n < m + 1) {
    throw rank_deficient_error("centered_least_squares: need n >= m + 1 observations (n = " + std::to_string(n) +
                               ", m = " + std::to_string(m) + ")");
  }
  const auto yc = detail::centered(y);
  CenteredFit fit;
  fit.residuals = yc;
  fit.intercept = detail::mean_of(y);
  if (m == 0) return fit;

  const DenseMatrix<double> xc = center_columns(x);
  DenseMatrix<double> gram(m, m);
  std::vector<double> rhs(m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += xc(i, a) * xc(i, b);
      gram(a, b) = s;
      gram(b, a) = s;
    }
    for (std::size_t i = 0; i < n; ++i) rhs[a] += xc(i, a) * yc[i];
  }
  fit.coefficients = detail::solve_gram(gram, rhs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < m; ++a) fit.residuals[i] -= xc(i, a) * fit.coefficients[a];
  }
  for (std::size_t a = 0; a < m; ++a) {
    double col_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) col_mean += x(i, a);
    fit.intercept -= fit.coefficients[a] * col_mean / static_cast<double>(n);
  }
  return fit;
}

/// (I - H)·y with H the hat matrix of the design [1 x], computed as
/// C·y - x_c(x_cᵀx_c)⁻¹x_cᵀ·y.
inline std::vector<double> annihilator_residuals(std::span<const double> y, const DenseMatrix<double>& x) {
  return centered_least_squares(y, x).residuals;
}

/// Largest componentwise gap between the two sides of the normal equations
/// written in Fourier space:
///   Σ_{t≥1} (β̂ ∘ F_x(t))·conj(F_x(t))  vs  Σ_{t≥1} F_x(t)·conj(F_y(t)).
/// Zero (up to round-off) exactly when β̂ solves the centered normal equations.
inline double fourier_normal_equations_gap(std::span<const double> beta_hat, const DenseMatrix<double>& x,
                                           std::span<const double> y) {
  const std::size_t n = y.size();
  const std::size_t m = x.cols();
  if (x.rows() != n) throw dimension_error("fourier_normal_equations_gap: design rows do not match response length");
  if (beta_hat.size() != m) {
    throw dimension_error("fourier_normal_equations_gap: coefficient count does not match design columns");
  }
  if (n == 0) throw empty_input_error("fourier_normal_equations_gap: empty response");
  std::vector<ComplexVector> fx;
  fx.reserve(m);
  for (std::size_t k = 0; k < m; ++k) fx.push_back(dft(x.col(k)));
  const auto fy = dft(y);
  double gap = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    for (std::size_t t = 1; t < n; ++t) {
      Complex fitted{0.0, 0.0};
      for (std::size_t k = 0; k < m; ++k) fitted += beta_hat[k] * fx[k][t];
      lhs += fitted * std::conj(fx[i][t]);
      rhs += fx[i][t] * std::conj(fy[t]);
    }
    gap = std::max(gap, std::abs(lhs - rhs));
  }
  return gap;
}

// ---------------------------------------------------------------------------
// Degrees of freedom and variance estimation
// ---------------------------------------------------------------------------

/// dim of the residual space = rank C_n = n - 1.
inline std::size_t degrees_of_freedom(std::size_t n) {
  if (n == 0) throw domain_error("degrees_of_freedom: n must be positive");
  return n - 1;
}

/// Bessel-corrected sample variance ‖x - x̄‖²/(n - 1).
inline double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw dimension_error("sample_variance: need at least 2 observations (no degrees of freedom)");
  return sum_of_squares(x) / static_cast<double>(x.size() - 1);
}

/// Equicorrelation matrix M(1, ρ) with -1/(n-1) < ρ < 1.
class Equicorrelation {
 public:
  Equicorrelation(std::size_t n, double rho) : n_(n), rho_(rho) {
    if (n == 0) throw domain_error("equicorrelation: n must be positive");
    if (!std::isfinite(rho)) throw domain_error("equicorrelation: rho must be finite");
    if (!(rho < 1.0)) {
      throw domain_error("equicorrelation: rho = " + detail::show(rho) + " violates the upper bound rho < 1");
    }
    if (n > 1) {
      const double lower = -1.0 / static_cast<double>(n - 1);
      if (!(rho > lower) || !(matrix().lambda_minor() > 0.0)) {
        throw domain_error("equicorrelation: rho = " + detail::show(rho) + " violates the lower bound rho > -1/(n-1) = " +
                           detail::show(lower));
      }
    }
  }

  std::size_t n() const noexcept { return n_; }
  double rho() const noexcept { return rho_; }
  DoubleConstant<double> matrix() const { return {n_, 1.0, rho_}; }

 private:
  std::size_t n_;
  double rho_;
};

inline Equicorrelation equicorrelation(std::size_t n, double rho) { return {n, rho}; }

/// Σ², its principal root Σ, and their inverses, in closed form.
struct EquicorrelationForms {
  DoubleConstant<double> sigma2;
  DoubleConstant<double> sigma;
  DoubleConstant<double> sigma2_inv;
  DoubleConstant<double> sigma_inv;
};

inline EquicorrelationForms equicorrelation_forms(const Equicorrelation& e) {
  const std::size_t n = e.n();
  const double nd = static_cast<double>(n);
  const double rho = e.rho();
  const double major = 1.0 - rho;
  const double minor = 1.0 - rho + nd * rho;

  const double inv_shift = rho / (major * minor);
  const double root_shift = (std::sqrt(minor) - std::sqrt(major)) / nd;
  const double inv_root_shift = (1.0 / std::sqrt(minor) - 1.0 / std::sqrt(major)) / nd;
  return {
      {n, 1.0, rho},
      {n, std::sqrt(major) + root_shift, root_shift},
      {n, 1.0 / major - inv_shift, -inv_shift},
      {n, 1.0 / std::sqrt(major) + inv_root_shift, inv_root_shift},
  };
}

/// Mahalanobis distance under Σ = M(1, ρ), using the closed-form inverse.
inline double mahalanobis_sq(std::span<const double> x, const Equicorrelation& e) {
  if (x.size() != e.n()) throw dimension_error("mahalanobis_sq: vector length does not match n");
  const auto xc = detail::centered(x);
  const auto transformed = dcm::apply(equicorrelation_forms(e).sigma2_inv, std::span<const double>(xc));
  double q = 0.0;
  for (std::size_t i = 0; i < xc.size(); ++i) q += xc[i] * transformed[i];
  return std::max(q, 0.0);
}

/// Degrees-of-freedom bookkeeping for a sample of size n.
///
/// `df_eff` is the divisor that makes ‖X - X̄‖²/df_eff unbiased for σ² when
/// V(X) = σ²·M(1, ρ): E‖CX‖² = σ²·tr(C·M(1, ρ)) = σ²(1 - ρ)(n - 1).
/// `df_eff_squared` carries the alternative (1 - ρ)²(n - 1), which is biased
/// under that model and is reported for comparison only.
struct DfReport {
  std::size_t n = 0;
  std::size_t df = 0;
  double df_eff = 0.0;
  double n_eff = 0.0;
  double df_eff_squared = 0.0;
  double n_eff_squared = 0.0;
  std::optional<double> rho;
  std::optional<double> variance_estimate;
};

inline DfReport effective_df(std::size_t n) {
  if (n < 2) throw dimension_error("effective_df: need n >= 2");
  const double df = static_cast<double>(n - 1);
  return {n, n - 1, df, static_cast<double>(n), df, static_cast<double>(n), std::nullopt, std::nullopt};
}

inline DfReport effective_df(std::size_t n, double rho) {
  if (n < 2) throw dimension_error("effective_df: need n >= 2");
  const Equicorrelation e(n, rho);
  const double df = static_cast<double>(n - 1);
  const double shrink = 1.0 - e.rho();
  DfReport r;
  r.n = n;
  r.df = n - 1;
  r.df_eff = shrink * df;
  r.n_eff = 1.0 + r.df_eff;
  r.df_eff_squared = shrink * shrink * df;
  r.n_eff_squared = 1.0 + r.df_eff_squared;
  r.rho = rho;
  return r;
}

/// ‖x - x̄‖²/df_eff with df_eff = (1 - ρ)(n - 1).
inline double adjusted_sample_variance(std::span<const double> x, double rho) {
  const DfReport r = effective_df(x.size(), rho);
  if (!(r.df_eff > 0.0)) throw domain_error("adjusted_sample_variance: effective degrees of freedom is not positive");
  return sum_of_squares(x) / r.df_eff;
}

/// Report for a sample, with the variance estimate filled in. Without ρ the
/// estimate is the Bessel-corrected variance.
inline DfReport variance_report(std::span<const double> x, std::optional<double> rho = std::nullopt) {
  DfReport r = rho ? effective_df(x.size(), *rho) : effective_df(x.size());
  r.variance_estimate = sum_of_squares(x) / r.df_eff;
  return r;
}

// ---------------------------------------------------------------------------
// Pooled sum-of-squares decomposition
// ---------------------------------------------------------------------------

struct SsDecomposition {
  double pooled_ss = 0.0;
  std::vector<double> group_ss;
  double between_term = 0.0;
  Partition group_sizes{std::vector<std::size_t>{1}};
  /// |SS_p - ΣSS_ℓ - B_w| / max(1, SS_p), where B_w is the between term
  /// evaluated from the weighted block formula.
  double identity_residual = 0.0;
};

/// (1/n)[Σ_ℓ w_ℓ·(1ᵀx_ℓ)² - Σ_{ℓ≠h}(1ᵀx_ℓ)(1ᵀx_h)], w_ℓ = (n - n_ℓ)/n_ℓ.
/// The quadratic form annihilates constants, so it is evaluated on data
/// shifted by the pooled mean.
inline double between_term_weighted(std::span<const std::vector<double>> groups) {
  if (groups.empty()) throw empty_input_error("between_term_weighted: no groups");
  std::size_t n = 0;
  double total = 0.0;
  for (const auto& g : groups) {
    if (g.empty()) throw empty_input_error("between_term_weighted: empty group");
    n += g.size();
    for (double v : g) total += v;
  }
  const double nd = static_cast<double>(n);
  const double shift = total / nd;
  std::vector<double> sums;
  sums.reserve(groups.size());
  for (const auto& g : groups) {
    double s = 0.0;
    for (double v : g) s += v - shift;
    sums.push_back(s);
  }
  double diag = 0.0;
  double off = 0.0;
  for (std::size_t l = 0; l < groups.size(); ++l) {
    const double nl = static_cast<double>(groups[l].size());
    diag += (nd - nl) / nl * sums[l] * sums[l];
    for (std::size_t h = 0; h < groups.size(); ++h) {
      if (h != l) off += sums[l] * sums[h];
    }
  }
  return (diag - off) / nd;
}

/// n₁n₂/(n₁ + n₂)·(x̄₁ - x̄₂)².
inline double two_group_between(std::span<const double> x1, std::span<const double> x2) {
  if (x1.empty() || x2.empty()) throw empty_input_error("two_group_between: empty group");
  const double n1 = static_cast<double>(x1.size());
  const double n2 = static_cast<double>(x2.size());
  const double d = detail::mean_of(x1) - detail::mean_of(x2);
  return n1 * n2 / (n1 + n2) * d * d;
}

/// SS_p = Σ SS_ℓ + between.
inline SsDecomposition pooled_ss_decomposition(std::span<const std::vector<double>> groups) {
  if (groups.empty()) throw empty_input_error("pooled_ss_decomposition: no groups");
  SsDecomposition out;
  std::vector<double> pooled;
  std::vector<std::size_t> sizes;
  for (std::size_t l = 0; l < groups.size(); ++l) {
    if (groups[l].empty()) {
      throw empty_input_error("pooled_ss_decomposition: group " + std::to_string(l + 1) + " is empty");
    }
    pooled.insert(pooled.end(), groups[l].begin(), groups[l].end());
    sizes.push_back(groups[l].size());
    out.group_ss.push_back(sum_of_squares(groups[l]));
  }
  out.group_sizes = Partition(std::move(sizes));
  out.pooled_ss = sum_of_squares(pooled);
  double within = 0.0;
  for (double s : out.group_ss) within += s;
  const double scale = std::max(1.0, out.pooled_ss);
  double between = out.pooled_ss - within;
  if (between < 0.0) {
    if (between < -1e-12 * scale) {
      throw consistency_error("pooled_ss_decomposition: between-group term is negative (" + detail::show(between) +
                              ")");
    }
    between = 0.0;
  }
  out.between_term = between;
  out.identity_residual = std::abs(out.pooled_ss - within - between_term_weighted(groups)) / scale;
  return out;
}

}  // namespace dcm
