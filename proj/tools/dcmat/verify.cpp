#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <limits>
#include <utility>

#include "cli.hpp"
#include "dcm/dcm.hpp"
#include "dcm/oracle.hpp"
#include "dcm/random.hpp"
#include "report.hpp"

namespace dcmat {

namespace {

using dcm::DenseMatrix;
using DC = dcm::DoubleConstant<double>;
namespace oracle = dcm::oracle;

constexpr std::size_t kInstances = 500;

/// Worst error seen by one invariant, measured as a fraction of the
/// tolerance that applies to it, with a description of where it occurred.
class Tracker {
 public:
  explicit Tracker(double tol) : tol_(tol) {}

  template <class Describe>
  void see(double err, Describe&& describe) {
    see(err, tol_, std::forward<Describe>(describe));
  }

  template <class Describe>
  void see(double err, double tol, Describe&& describe) {
    double ratio = err / tol;
    if (std::isnan(ratio)) ratio = std::numeric_limits<double>::infinity();
    if (ratio > worst_ || where_.empty()) {
      worst_ = ratio;
      where_ = describe() + " (err " + format_number(err) + ", tol " + format_number(tol) + ")";
    }
  }

  void bump(double amount) { worst_ += amount; }
  bool ok() const { return worst_ <= 1.0; }
  double worst() const { return worst_; }
  const std::string& where() const { return where_; }

 private:
  double tol_;
  double worst_ = 0.0;
  std::string where_;
};

std::string describe(const DC& m) {
  return "M(n=" + std::to_string(m.n()) + ", a=" + format_number(m.a()) + ", t=" + format_number(m.t()) + ")";
}

std::vector<double> random_vector(std::size_t n, dcm::RngStream& rng, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (auto& e : v) e = rng.uniform(lo, hi);
  return v;
}

DC random_matrix(std::size_t n, dcm::RngStream& rng, double range = 10.0) {
  return {n, rng.uniform(-range, range), rng.uniform(-range, range)};
}

/// Positive-definite instance with both eigenvalues in [lo, hi].
DC random_positive(std::size_t n, dcm::RngStream& rng, double lo, double hi) {
  return dcm::from_eigenvalues(dcm::CanonicalForm<double>{n, rng.uniform(lo, hi), rng.uniform(lo, hi)});
}

double max_diff(const DenseMatrix<double>& x, const DenseMatrix<double>& y) { return dcm::max_abs_diff(x, y); }

double rel_scale(const DenseMatrix<double>& ref) { return std::max(1.0, oracle::max_abs(ref)); }

double max_diff(std::span<const double> x, std::span<const double> y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

struct Context {
  std::size_t max_n;
  std::uint64_t seed;
};

using Check = std::function<Tracker(const Context&)>;

struct Invariant {
  const char* name;
  Check run;
};

std::size_t pick_n(dcm::RngStream& rng, const Context& ctx, std::size_t lo = 1) {
  return static_cast<std::size_t>(rng.integer(lo, std::max(lo, ctx.max_n)));
}

// --- spectral structure -----------------------------------------------------

Tracker determinant_closed_form(const Context& ctx) {
  Tracker tr(1e-9);
  dcm::RngStream rng(ctx.seed ^ 0x01);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const DC m = random_matrix(pick_n(rng, {std::min<std::size_t>(ctx.max_n, 8), 0}), rng);
    const double ref = oracle::dense_det(dcm::materialize(m));
    const double got = dcm::determinant(m);
    tr.see(std::abs(got - ref) / std::max(1.0, std::abs(ref)),
           [&] { return describe(m) + " det=" + format_number(got) + " dense=" + format_number(ref); });
  }
  return tr;
}

Tracker char_poly_roots(const Context& ctx) {
  Tracker tr(1e-9);
  dcm::RngStream rng(ctx.seed ^ 0x02);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const DC m = random_matrix(pick_n(rng, {std::min<std::size_t>(ctx.max_n, 8), 0}), rng);
    const double nd = static_cast<double>(m.n());
    // For n = 1 the major eigenvalue has multiplicity zero and is not a root.
    const std::vector<double> roots = m.n() == 1 ? std::vector<double>{m.lambda_minor()}
                                                 : std::vector<double>{m.lambda_major(), m.lambda_minor()};
    for (double lambda : roots) {
      const double scale = std::max(1.0, std::pow(std::abs(lambda), nd));
      tr.see(std::abs(dcm::char_poly(m, lambda)) / scale,
             [&, lambda] { return describe(m) + " at lambda=" + format_number(lambda); });
    }
    // Away from the roots the closed form must agree with det(M - λI).
    const double z = rng.uniform(-10.0, 10.0);
    const double ref = oracle::dense_det(dcm::materialize(DC(m.n(), m.a() - z, m.t())));
    tr.see(std::abs(dcm::char_poly(m, z) - ref) / std::max(1.0, std::abs(ref)),
           [&] { return describe(m) + " at lambda=" + format_number(z) + " dense=" + format_number(ref); });
  }
  return tr;
}

Tracker fourier_diagonalization(const Context& ctx) {
  Tracker tr(1e-10);
  dcm::RngStream rng(ctx.seed ^ 0x03);
  for (std::size_t n = 2; n <= ctx.max_n; ++n) {
    const DC m = random_matrix(n, rng);
    const auto d = dcm::diagonalize(m);
    const auto dense = dcm::materialize(m);
    tr.see(max_diff(d.reconstruct(), dense) / rel_scale(dense), [&] { return describe(m) + " reconstruction"; });

    const auto u = d.basis.dense();
    const auto uu = oracle::complex_matmul(u, oracle::complex_conjugate(u), n);
    double err = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) err = std::max(err, std::abs(uu[r * n + c] - (r == c ? 1.0 : 0.0)));
    }
    tr.see(err, 1e-12, [&] { return "unitarity of U at n=" + std::to_string(n); });
  }
  return tr;
}

Tracker geometric_sum_indicator(const Context& ctx) {
  Tracker tr(1e-12);
  for (std::size_t n = 1; n <= ctx.max_n; ++n) {
    const long long nn = static_cast<long long>(n);
    for (long long r = -2 * nn; r <= 2 * nn; ++r) {
      const double want = r % nn == 0 ? 1.0 : 0.0;
      const double got = dcm::geometric_sum(n, r);
      tr.see(std::abs(got - want), [&] {
        return "n=" + std::to_string(n) + " r=" + std::to_string(r) + " got=" + format_number(got);
      });
    }
  }
  return tr;
}

// --- closure ----------------------------------------------------------------

Tracker linear_combination_closure(const Context& ctx) {
  Tracker tr(1e-12);
  dcm::RngStream rng(ctx.seed ^ 0x04);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const std::size_t n = pick_n(rng, ctx);
    const std::size_t k = static_cast<std::size_t>(rng.integer(1, 4));
    std::vector<dcm::Term<double>> terms;
    DenseMatrix<double> ref(n, n);
    for (std::size_t j = 0; j < k; ++j) {
      const double kappa = rng.uniform(-2.0, 2.0);
      terms.push_back({kappa, random_matrix(n, rng)});
      ref = oracle::dense_axpy(kappa, dcm::materialize(terms.back().matrix), ref);
    }
    const auto got = dcm::linear_combination(std::span<const dcm::Term<double>>(terms));
    tr.see(max_diff(dcm::materialize(got), ref) / rel_scale(ref),
           [&] { return std::to_string(k) + " terms, result " + describe(got); });
  }
  return tr;
}

Tracker product_closure(const Context& ctx) {
  Tracker tr(1e-10);
  dcm::RngStream rng(ctx.seed ^ 0x05);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const std::size_t n = pick_n(rng, ctx);
    const std::size_t k = static_cast<std::size_t>(rng.integer(2, 3));
    std::vector<DC> factors;
    DenseMatrix<double> ref = DenseMatrix<double>::identity(n);
    for (std::size_t j = 0; j < k; ++j) {
      factors.push_back(random_matrix(n, rng, 2.0));
      ref = oracle::dense_matmul(ref, dcm::materialize(factors.back()));
    }
    const auto got = dcm::product(std::span<const DC>(factors));
    tr.see(max_diff(dcm::materialize(got), ref) / rel_scale(ref),
           [&] { return std::to_string(k) + " factors, first " + describe(factors.front()); });
  }
  return tr;
}

Tracker analytic_function_closure(const Context& ctx) {
  Tracker tr(1e-10);
  dcm::RngStream rng(ctx.seed ^ 0x06);
  const std::size_t cap = std::min<std::size_t>(ctx.max_n, 32);
  for (std::size_t i = 0; i < kInstances / 5; ++i) {
    const std::size_t n = pick_n(rng, {cap, 0});
    const DC m = random_positive(n, rng, 0.1, 10.0);
    const auto dense = dcm::materialize(m);
    const auto id = DenseMatrix<double>::identity(n);

    const auto root = dcm::materialize(dcm::sqrt_principal(m));
    tr.see(max_diff(oracle::dense_matmul(root, root), dense) / rel_scale(dense),
           [&] { return describe(m) + " sqrt^2"; });
    tr.see(max_diff(oracle::dense_matmul(dense, dcm::materialize(dcm::inverse(m))), id),
           [&] { return describe(m) + " M*inv(M)"; });
    tr.see(max_diff(dcm::materialize(dcm::exp_m(dcm::log_m(m))), dense) / rel_scale(dense),
           [&] { return describe(m) + " exp(log(M))"; });

    // The dense scaling-and-squaring reference is only good to about 1e-8.
    const DC e = dcm::from_eigenvalues(dcm::CanonicalForm<double>{n, rng.uniform(-3, 3), rng.uniform(-3, 3)});
    const auto ref = oracle::dense_expm(dcm::materialize(e));
    tr.see(max_diff(dcm::materialize(dcm::exp_m(e)), ref) / rel_scale(ref), 1e-8,
           [&] { return describe(e) + " exp vs dense"; });
  }
  return tr;
}

// --- decompositions ---------------------------------------------------------

Tracker basis_decomposition(const Context& ctx) {
  Tracker tr(1e-10);
  dcm::RngStream rng(ctx.seed ^ 0x07);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const std::size_t n = pick_n(rng, ctx);
    const DC m = random_matrix(n, rng);
    DC b1 = random_matrix(n, rng);
    DC b2 = random_matrix(n, rng);
    while (std::abs(b1.a() * b2.t() - b2.a() * b1.t()) < 1.0) b2 = random_matrix(n, rng);
    const auto w = dcm::decompose_in_basis(m, b1, b2);
    const auto back = dcm::linear_combination({dcm::Term<double>{w.first, b1}, {w.second, b2}});
    tr.see(std::max(std::abs(back.a() - m.a()), std::abs(back.t() - m.t())),
           [&] { return describe(m) + " over " + describe(b1) + ", " + describe(b2); });
  }
  return tr;
}

Tracker canonical_decomposition(const Context& ctx) {
  Tracker tr(1e-10);
  dcm::RngStream rng(ctx.seed ^ 0x08);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const std::size_t n = pick_n(rng, ctx);
    const DC m = random_matrix(n, rng);
    const auto w = dcm::decompose_canonical(m);
    const double nd = static_cast<double>(n);
    const DC mean_proj(n, 1.0 / nd, 1.0 / nd);
    const auto back = dcm::materialize(
        dcm::linear_combination({dcm::Term<double>{w.centering, DC::centering(n)}, {w.mean, mean_proj}}));
    const auto dense = dcm::materialize(m);
    tr.see(max_diff(back, dense), [&] { return describe(m) + " canonical"; });
    if (n >= 2) {
      const auto limits = dcm::materialize(dcm::linear_combination(
          {dcm::Term<double>{w.lower_limit, dcm::lower_limit_equicorrelation(n)},
           {w.upper_limit, dcm::upper_limit_equicorrelation(n)}}));
      tr.see(max_diff(limits, dense), [&] { return describe(m) + " limiting equicorrelation weights"; });
    }
  }
  return tr;
}

// --- Fourier duality --------------------------------------------------------

Tracker fourier_apply(const Context& ctx) {
  Tracker tr(1e-9);
  dcm::RngStream rng(ctx.seed ^ 0x09);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const std::size_t n = pick_n(rng, ctx);
    const DC m = random_matrix(n, rng);
    const auto x = random_vector(n, rng);
    const auto ref = oracle::dense_matvec(dcm::materialize(m), std::span<const double>(x));
    const auto got = dcm::apply_via_fourier(m, std::span<const double>(x));
    tr.see(max_diff(got, ref), [&] { return describe(m); });
  }
  return tr;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Tracker parseval_identity(const Context& ctx) {
  Tracker tr(1e-10);
  dcm::RngStream rng(ctx.seed ^ 0x0A);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const std::size_t n = pick_n(rng, ctx);
    const DC m1 = random_matrix(n, rng);
    const DC m2 = random_matrix(n, rng);
    const auto x = random_vector(n, rng);
    const auto y = random_vector(n, rng);
    const auto mx = oracle::dense_matvec(dcm::materialize(m1), std::span<const double>(x));
    const auto my = oracle::dense_matvec(dcm::materialize(m2), std::span<const double>(y));
    const double ref = dot(mx, my);
    const double scale = std::max(1.0, std::sqrt(dot(mx, mx) * dot(my, my)));
    const double got = dcm::parseval_product(m1, m2, x, y);
    tr.see(std::abs(got - ref) / scale, [&] { return describe(m1) + ", " + describe(m2); });
  }
  return tr;
}

Tracker plancherel_identity(const Context& ctx) {
  Tracker tr(1e-10);
  dcm::RngStream rng(ctx.seed ^ 0x0B);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const std::size_t n = pick_n(rng, ctx);
    const DC m = random_matrix(n, rng);
    const auto x = random_vector(n, rng);
    const auto mx = oracle::dense_matvec(dcm::materialize(m), std::span<const double>(x));
    const double ref = dot(mx, mx);
    const double got = dcm::plancherel_norm(m, x);
    tr.see(std::abs(got - ref) / std::max(1.0, ref), [&] { return describe(m); });
  }
  return tr;
}

// --- statistics -------------------------------------------------------------

Tracker centering_idempotent(const Context& ctx) {
  Tracker tr(1e-12);
  for (std::size_t n = 1; n <= ctx.max_n; ++n) {
    const DC c = DC::centering(n);
    const auto dense = dcm::materialize(c);
    tr.see(max_diff(oracle::dense_matmul(dense, dense), dense), [&] { return "dense C*C at n=" + std::to_string(n); });
    tr.see(max_diff(dcm::materialize(c * c), dense), [&] { return "structured C*C at n=" + std::to_string(n); });
  }
  return tr;
}

Tracker centering_self_pseudoinverse(const Context& ctx) {
  Tracker tr(1e-12);
  for (std::size_t n = 1; n <= ctx.max_n; ++n) {
    const auto c = dcm::materialize(DC::centering(n));
    const auto cc = oracle::dense_matmul(c, c);
    const auto ccc = oracle::dense_matmul(cc, c);
    tr.see(max_diff(ccc, c), [&] { return "C*C*C != C at n=" + std::to_string(n); });
    tr.see(max_diff(cc, oracle::dense_transpose(cc)), [&] { return "C*C not symmetric at n=" + std::to_string(n); });
  }
  return tr;
}

Tracker annihilator_residuals(const Context& ctx) {
  Tracker tr(1e-9);
  dcm::RngStream rng(ctx.seed ^ 0x0C);
  for (std::size_t i = 0; i < kInstances / 5; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.integer(1, 3));
    const std::size_t n = static_cast<std::size_t>(rng.integer(m + 2, std::max(m + 2, ctx.max_n)));
    DenseMatrix<double> x(n, m);
    DenseMatrix<double> z(n, m + 1, 1.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < m; ++c) z(r, c + 1) = x(r, c) = rng.uniform(-1.0, 1.0);
    }
    const auto y = random_vector(n, rng);
    const auto zt = oracle::dense_transpose(z);
    const auto beta = oracle::dense_solve(oracle::dense_matmul(zt, z), oracle::dense_matvec(zt, std::span<const double>(y)));
    const auto fitted = oracle::dense_matvec(z, std::span<const double>(beta));
    std::vector<double> ref(n);
    for (std::size_t r = 0; r < n; ++r) ref[r] = y[r] - fitted[r];
    const auto got = dcm::annihilator_residuals(y, x);
    tr.see(max_diff(got, ref), [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m); });

    const auto fit = dcm::centered_least_squares(y, x);
    tr.see(dcm::fourier_normal_equations_gap(fit.coefficients, x, y),
           [&] { return "Fourier normal equations, n=" + std::to_string(n) + " m=" + std::to_string(m); });
  }
  return tr;
}

Tracker ss_decomposition_identity(const Context& ctx) {
  Tracker tr(1e-9);
  dcm::RngStream rng(ctx.seed ^ 0x0D);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const std::size_t k = static_cast<std::size_t>(rng.integer(1, 5));
    const double offset = rng.uniform(-100.0, 100.0);
    std::vector<std::vector<double>> groups(k);
    double total = 0.0;
    std::size_t count = 0;
    for (auto& g : groups) {
      g.resize(static_cast<std::size_t>(rng.integer(1, 8)));
      const double shift = rng.uniform(-5.0, 5.0);
      for (auto& v : g) {
        v = offset + shift + rng.normal();
        total += v;
      }
      count += g.size();
    }
    const auto d = dcm::pooled_ss_decomposition(std::span<const std::vector<double>>(groups));
    tr.see(d.identity_residual, [&] { return std::to_string(k) + " groups, identity residual"; });

    const double grand = total / static_cast<double>(count);
    double between = 0.0;
    for (const auto& g : groups) {
      double mean = 0.0;
      for (double v : g) mean += v;
      mean /= static_cast<double>(g.size());
      between += static_cast<double>(g.size()) * (mean - grand) * (mean - grand);
    }
    tr.see(std::abs(d.between_term - between) / std::max(1.0, d.pooled_ss),
           [&] { return std::to_string(k) + " groups, between=" + format_number(d.between_term) +
                        " direct=" + format_number(between); });
  }
  return tr;
}

Tracker two_group_between_closed_form(const Context& ctx) {
  Tracker tr(1e-12);
  const std::vector<std::vector<double>> fixture{{1.0, 2.0}, {4.0, 6.0}};
  const auto d = dcm::pooled_ss_decomposition(std::span<const std::vector<double>>(fixture));
  tr.see(std::abs(d.pooled_ss - 14.75), [&] { return "fixture pooled=" + format_number(d.pooled_ss); });
  tr.see(std::abs(d.between_term - 12.25), [&] { return "fixture between=" + format_number(d.between_term); });
  tr.see(std::abs(dcm::two_group_between(fixture[0], fixture[1]) - 12.25), [] { return std::string("fixture closed form"); });

  dcm::RngStream rng(ctx.seed ^ 0x0E);
  for (std::size_t i = 0; i < kInstances; ++i) {
    std::vector<std::vector<double>> g(2);
    for (auto& grp : g) grp = random_vector(static_cast<std::size_t>(rng.integer(1, 10)), rng, -3.0, 3.0);
    const auto dd = dcm::pooled_ss_decomposition(std::span<const std::vector<double>>(g));
    const double closed = dcm::two_group_between(g[0], g[1]);
    tr.see(std::abs(dd.between_term - closed) / std::max(1.0, dd.pooled_ss), 1e-9,
           [&] { return "random pair, closed=" + format_number(closed); });
  }
  return tr;
}

Tracker trace_effective_df(const Context& ctx) {
  Tracker tr(1e-12);
  for (std::size_t n = 2; n <= ctx.max_n; ++n) {
    for (double rho : {-0.3, 0.0, 0.4, 0.9}) {
      if (!(rho > -1.0 / static_cast<double>(n - 1))) continue;
      const auto sigma2 = dcm::materialize(dcm::equicorrelation(n, rho).matrix());
      const auto prod = oracle::dense_matmul(dcm::materialize(DC::centering(n)), sigma2);
      double trace = 0.0;
      for (std::size_t j = 0; j < n; ++j) trace += prod(j, j);
      const double df_eff = dcm::effective_df(n, rho).df_eff;
      tr.see(std::abs(trace - df_eff) / std::max(1.0, df_eff), [&] {
        return "n=" + std::to_string(n) + " rho=" + format_number(rho) + " trace=" + format_number(trace) +
               " df_eff=" + format_number(df_eff);
      });
    }
  }
  return tr;
}

Tracker equicorrelation_forms(const Context& ctx) {
  Tracker tr(1e-10);
  dcm::RngStream rng(ctx.seed ^ 0x0F);
  for (std::size_t i = 0; i < kInstances / 5; ++i) {
    const std::size_t n = pick_n(rng, ctx, 2);
    const double lower = -1.0 / static_cast<double>(n - 1);
    const double rho = rng.uniform(lower + 0.05 * (1.0 - lower), 0.95);
    const auto f = dcm::equicorrelation_forms(dcm::equicorrelation(n, rho));
    const auto s = dcm::materialize(f.sigma);
    const auto s2 = dcm::materialize(f.sigma2);
    const auto id = DenseMatrix<double>::identity(n);
    auto where = [&](const char* what) { return "n=" + std::to_string(n) + " rho=" + format_number(rho) + " " + what; };
    tr.see(max_diff(oracle::dense_matmul(s, s), s2), [&] { return where("Sigma*Sigma"); });
    tr.see(max_diff(oracle::dense_matmul(s2, dcm::materialize(f.sigma2_inv)), id), [&] { return where("Sigma2*inv"); });
    tr.see(max_diff(oracle::dense_matmul(s, dcm::materialize(f.sigma_inv)), id), [&] { return where("Sigma*inv"); });
  }
  return tr;
}

const std::vector<Invariant>& invariants() {
  static const std::vector<Invariant> list{
      {"determinant_closed_form", determinant_closed_form},
      {"char_poly_roots", char_poly_roots},
      {"fourier_diagonalization", fourier_diagonalization},
      {"geometric_sum_indicator", geometric_sum_indicator},
      {"linear_combination_closure", linear_combination_closure},
      {"product_closure", product_closure},
      {"analytic_function_closure", analytic_function_closure},
      {"basis_decomposition", basis_decomposition},
      {"canonical_decomposition", canonical_decomposition},
      {"fourier_apply", fourier_apply},
      {"parseval_identity", parseval_identity},
      {"plancherel_identity", plancherel_identity},
      {"centering_idempotent", centering_idempotent},
      {"centering_self_pseudoinverse", centering_self_pseudoinverse},
      {"annihilator_residuals", annihilator_residuals},
      {"ss_decomposition_identity", ss_decomposition_identity},
      {"two_group_between_closed_form", two_group_between_closed_form},
      {"trace_effective_df", trace_effective_df},
      {"equicorrelation_forms", equicorrelation_forms},
  };
  return list;
}

}  // namespace

std::vector<std::string> verify_invariant_names() {
  std::vector<std::string> names;
  for (const auto& inv : invariants()) names.emplace_back(inv.name);
  return names;
}

int verify(const VerifyOptions& options, std::ostream& out) {
  const Context ctx{std::max<std::size_t>(options.max_n, 2), options.seed};
  std::size_t failures = 0;
  std::string first_failure;
  for (const auto& inv : invariants()) {
    Tracker tr = inv.run(ctx);
    // A perturbation of twice the tolerance on top of whatever error was seen.
    if (options.inject_fault && *options.inject_fault == inv.name) tr.bump(2.0);
    if (tr.ok()) {
      out << "PASS " << inv.name << " worst=" << format_number(tr.worst()) << " of tolerance\n";
    } else {
      ++failures;
      out << "FAIL " << inv.name << " worst=" << format_number(tr.worst()) << " of tolerance at " << tr.where()
          << "\n";
      if (first_failure.empty()) first_failure = inv.name;
    }
  }
  if (failures == 0) {
    out << "verify: all " << invariants().size() << " invariants passed (seed " << options.seed << ", max n "
        << ctx.max_n << ")\n";
    return kSuccess;
  }
  out << "verify: " << failures << " of " << invariants().size() << " invariants failed; first: " << first_failure
      << "\n";
  return kVerificationFailure;
}

}  // namespace dcmat
