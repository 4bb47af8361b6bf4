// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dcm/dcm.hpp"
#include "dcm/oracle.hpp"
#include "dcm/random.hpp"

namespace {

using DC = dcm::DoubleConstant<double>;
using dcm::DenseMatrix;
namespace oracle = dcm::oracle;

constexpr std::size_t kInstances = 500;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the worst error/tolerance ratio and the first violation.
class Check {
 public:
  void see(const std::string& what, double err, double tol) {
    double ratio = err / tol;
    if (std::isnan(ratio)) ratio = std::numeric_limits<double>::infinity();
    if (ratio > worst_) {
      worst_ = ratio;
      worst_what_ = what;
    }
    if (ratio > 1.0 && failure_.empty()) {
      std::ostringstream s;
      s << what << ": err " << err << " > tol " << tol;
      failure_ = s.str();
    }
  }
  void require(const std::string& what, bool cond) {
    if (!cond && failure_.empty()) failure_ = what;
  }
  Outcome outcome(const std::string& extra = "") const {
    std::ostringstream s;
    if (!failure_.empty()) {
      s << failure_;
    } else {
      s << "worst " << worst_ << " of tolerance";
      if (!worst_what_.empty()) s << " (" << worst_what_ << ")";
    }
    if (!extra.empty()) s << "; " << extra;
    return {failure_.empty(), s.str()};
  }

 private:
  double worst_ = 0.0;
  std::string worst_what_;
  std::string failure_;
};

double max_diff(const DenseMatrix<double>& x, const DenseMatrix<double>& y) { return dcm::max_abs_diff(x, y); }

double max_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double rel(const DenseMatrix<double>& ref) { return std::max(1.0, oracle::max_abs(ref)); }

std::vector<double> random_vector(std::size_t n, dcm::RngStream& rng) {
  std::vector<double> v(n);
  for (auto& e : v) e = rng.uniform(-1.0, 1.0);
  return v;
}

DC random_dc(std::size_t n, dcm::RngStream& rng, double range = 10.0) {
  return {n, rng.uniform(-range, range), rng.uniform(-range, range)};
}

// Random positive-definite M with eigenvalues in [lo, hi].
DC random_pd(std::size_t n, dcm::RngStream& rng, double lo, double hi) {
  return dcm::from_eigenvalues(dcm::CanonicalForm<double>{n, rng.uniform(lo, hi), rng.uniform(lo, hi)});
}

DenseMatrix<double> dense_centering(std::size_t n) {
  DenseMatrix<double> c(n, n, -1.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) c(i, i) += 1.0;
  return c;
}

std::string tag(std::size_t n) { return "n=" + std::to_string(n); }

// 1. Determinant and characteristic polynomial.
Outcome determinant_and_char_poly() {
  Check c;
  dcm::RngStream rng(1001);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t i = 0; i < kInstances; ++i) {
      const DC m = random_dc(n, rng);
      const double ref = oracle::dense_det(dcm::materialize(m));
      c.see("determinant " + tag(n), std::abs(dcm::determinant(m) - ref), 1e-9 * std::max(1.0, std::abs(ref)));
      const double hi = m.lambda_minor();
      c.see("char_poly at lambda** " + tag(n), std::abs(dcm::char_poly(m, hi)),
            1e-9 * std::max(1.0, std::pow(std::abs(hi), static_cast<double>(n))));
      if (n > 1) {
        const double lo = m.lambda_major();
        c.see("char_poly at lambda* " + tag(n), std::abs(dcm::char_poly(m, lo)),
              1e-9 * std::max(1.0, std::pow(std::abs(lo), static_cast<double>(n))));
      }
    }
  }
  return c.outcome();
}

// 2. Fourier diagonalization, unitarity and the root-of-unity indicator.
Outcome fourier_diagonalization() {
  Check c;
  dcm::RngStream rng(1002);
  for (std::size_t n = 2; n <= 32; ++n) {
    const DC m = random_dc(n, rng);
    const auto d = dcm::diagonalize(m);
    c.see("reconstruction " + tag(n), max_diff(d.reconstruct(), dcm::materialize(m)), 1e-10);
    const auto u = dcm::UnitaryDFT(n).dense();
    const auto uu = oracle::complex_matmul(u, oracle::complex_conjugate(u), n);
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(uu[j * n + k] - (j == k ? 1.0 : 0.0)));
    }
    c.see("unitarity " + tag(n), err, 1e-12);
    const auto nn = static_cast<long long>(n);
    for (long long r = -2 * nn; r <= 2 * nn; ++r) {
      const double want = r % nn == 0 ? 1.0 : 0.0;
      c.see("indicator " + tag(n), std::abs(dcm::geometric_sum(n, r) - want), 1e-12);
    }
  }
  return c.outcome();
}

// 3. Closure under linear combination, product and analytic functions.
Outcome closure() {
  Check c;
  dcm::RngStream rng(1003);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 32));

    const auto k = static_cast<std::size_t>(rng.integer(1, 4));
    std::vector<dcm::Term<double>> terms;
    DenseMatrix<double> sum(n, n);
    for (std::size_t j = 0; j < k; ++j) {
      terms.push_back({rng.uniform(-2.0, 2.0), random_dc(n, rng)});
      sum = oracle::dense_axpy(terms.back().kappa, dcm::materialize(terms.back().matrix), sum);
    }
    const auto lc = dcm::linear_combination(std::span<const dcm::Term<double>>(terms));
    c.see("linear combination", max_diff(dcm::materialize(lc), sum) / rel(sum), 1e-12);

    const DC x = random_dc(n, rng, 2.0);
    const DC y = random_dc(n, rng, 2.0);
    const auto prod = oracle::dense_matmul(dcm::materialize(x), dcm::materialize(y));
    c.see("product", max_diff(dcm::materialize(x * y), prod) / rel(prod), 1e-10);

    const DC psd = dcm::from_eigenvalues(dcm::CanonicalForm<double>{n, rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)});
    const DC root = dcm::sqrt_principal(psd);
    c.see("sqrt squared", max_diff(dcm::materialize(root * root), dcm::materialize(psd)) / rel(dcm::materialize(psd)),
          1e-10);

    const DC inv_in = random_pd(n, rng, 0.5, 10.0);
    c.see("M times inverse",
          max_diff(oracle::dense_matmul(dcm::materialize(inv_in), dcm::materialize(dcm::inverse(inv_in))),
                   DenseMatrix<double>::identity(n)),
          1e-10);

    const DC pd = random_pd(n, rng, 0.1, 10.0);
    const auto pd_dense = dcm::materialize(pd);
    c.see("exp of log", max_diff(dcm::materialize(dcm::exp_m(dcm::log_m(pd))), pd_dense) / rel(pd_dense), 1e-10);

    const DC e_in = random_dc(n, rng, 1.0);
    const auto e_ref = oracle::dense_expm(dcm::materialize(e_in));
    c.see("exp against dense", max_diff(dcm::materialize(dcm::exp_m(e_in)), e_ref) / rel(e_ref), 1e-8);
  }
  return c.outcome();
}

// 4. Fourier-side application and inner products.
Outcome fourier_duality() {
  Check c;
  dcm::RngStream rng(1004);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 32));
    const DC m1 = random_dc(n, rng);
    const DC m2 = random_dc(n, rng);
    const auto x = random_vector(n, rng);
    const auto y = random_vector(n, rng);
    const auto mx = oracle::dense_matvec(dcm::materialize(m1), std::span<const double>(x));
    const auto my = oracle::dense_matvec(dcm::materialize(m2), std::span<const double>(y));
    c.see("apply_via_fourier", max_diff(dcm::apply_via_fourier(m1, std::span<const double>(x)), mx), 1e-9);
    const double scale = std::max(1.0, std::sqrt(dot(mx, mx) * dot(my, my)));
    c.see("Parseval", std::abs(dcm::parseval_product(m1, m2, x, y) - dot(mx, my)) / scale, 1e-10);
    const double pl = dot(mx, mx);
    c.see("Plancherel", std::abs(dcm::plancherel_norm(m1, x) - pl) / std::max(1.0, pl), 1e-10);
  }
  return c.outcome("relative to max(1, |Mx||My|)");
}

// 5. Centering matrix and the pooled sum-of-squares identity.
Outcome statistics() {
  Check c;
  for (std::size_t n = 1; n <= 32; ++n) {
    const auto cm = dcm::materialize(DC::centering(n));
    const auto cc = oracle::dense_matmul(cm, cm);
    c.see("idempotence " + tag(n), max_diff(cc, cm), 1e-12);
    c.see("C C+ C = C " + tag(n), max_diff(oracle::dense_matmul(cc, cm), cm), 1e-12);
    c.see("C+ C C+ = C+ " + tag(n), max_diff(oracle::dense_matmul(cm, cc), cm), 1e-12);
    c.see("C C+ symmetric " + tag(n), max_diff(cc, oracle::dense_transpose(cc)), 1e-12);
    c.see("matches dense centering " + tag(n), max_diff(cm, dense_centering(n)), 1e-12);
  }

  dcm::RngStream rng(1005);
  for (std::size_t i = 0; i < kInstances; ++i) {
    std::vector<std::vector<double>> groups(static_cast<std::size_t>(rng.integer(1, 6)));
    const double offset = rng.uniform(-20.0, 20.0);
    std::vector<double> all;
    for (auto& g : groups) {
      g.resize(static_cast<std::size_t>(rng.integer(1, 10)));
      const double shift = rng.uniform(-3.0, 3.0);
      for (auto& v : g) {
        v = offset + shift + rng.normal();
        all.push_back(v);
      }
    }
    // Direct two-pass sums as the reference.
    auto ss = [](const std::vector<double>& v) {
      double mean = 0.0;
      for (double e : v) mean += e;
      mean /= static_cast<double>(v.size());
      double s = 0.0;
      for (double e : v) s += (e - mean) * (e - mean);
      return std::pair{s, mean};
    };
    const auto [pooled, grand] = ss(all);
    double within = 0.0;
    double between = 0.0;
    for (const auto& g : groups) {
      const auto [s, mean] = ss(g);
      within += s;
      between += static_cast<double>(g.size()) * (mean - grand) * (mean - grand);
    }
    const auto d = dcm::pooled_ss_decomposition(std::span<const std::vector<double>>(groups));
    const double scale = std::max(1.0, pooled);
    c.see("pooled SS", std::abs(d.pooled_ss - pooled) / scale, 1e-9);
    c.see("between term", std::abs(d.between_term - between) / scale, 1e-9);
    double lib_within = 0.0;
    for (double s : d.group_ss) lib_within += s;
    c.see("identity", std::abs(d.pooled_ss - lib_within - d.between_term) / scale, 1e-9);
  }

  const std::vector<std::vector<double>> fixture{{1.0, 2.0}, {4.0, 6.0}};
  const auto d = dcm::pooled_ss_decomposition(std::span<const std::vector<double>>(fixture));
  c.see("fixture pooled", std::abs(d.pooled_ss - 14.75), 1e-12);
  c.see("fixture between", std::abs(d.between_term - 12.25), 1e-12);
  c.see("fixture two-group form", std::abs(dcm::two_group_between(fixture[0], fixture[1]) - 12.25), 1e-12);
  return c.outcome();
}

// 6. Expectation of the sum of squares under IID and equicorrelated data.
Outcome expectations() {
  Check c;
  std::ostringstream notes;
  const std::size_t trials = 100000;
  auto ss = [](std::span<const double> x) { return dcm::sum_of_squares(x); };

  const double sigma = 1.5;
  const auto iid = oracle::monte_carlo_mean(10, sigma, 0.0, trials, 2024, ss);
  c.see("IID n=10", std::abs(iid.mean - sigma * sigma * 9.0), 3.0 * iid.standard_error);

  const std::size_t n = 8;
  const double rho = 0.4;
  const auto eq = oracle::monte_carlo_mean(n, sigma, rho, trials, 2025, ss);
  c.see("equicorrelated n=8 rho=0.4", std::abs(eq.mean - sigma * sigma * (1.0 - rho) * 7.0), 3.0 * eq.standard_error);

  // Trace identity: tr(C M(1, rho)) = (1 - rho)(n - 1). Purely algebraic, so
  // it is checked for every listed rho even where M(1, rho) is not a valid
  // correlation matrix; the library routine is checked where it is.
  for (std::size_t m = 2; m <= 32; ++m) {
    for (double r : {-0.3, 0.0, 0.4, 0.9}) {
      const auto p = oracle::dense_matmul(dense_centering(m), dcm::materialize(DC(m, 1.0, r)));
      double tr = 0.0;
      for (std::size_t i = 0; i < m; ++i) tr += p(i, i);
      const double closed = (1.0 - r) * static_cast<double>(m - 1);
      c.see("trace " + tag(m), std::abs(tr - closed), 1e-12);
      if (r > -1.0 / static_cast<double>(m - 1)) {
        c.see("effective_df " + tag(m), std::abs(dcm::effective_df(m, r).df_eff - tr), 1e-12);
      }
    }
  }

  // The squared-factor variant must overestimate sigma^2.
  const auto rep = dcm::effective_df(n, rho);
  const auto adjusted = oracle::monte_carlo_mean(n, sigma, rho, trials, 2026, [&](std::span<const double> x) {
    return dcm::sum_of_squares(x) / rep.df_eff;
  });
  const auto squared = oracle::monte_carlo_mean(n, sigma, rho, trials, 2026, [&](std::span<const double> x) {
    return dcm::sum_of_squares(x) / rep.df_eff_squared;
  });
  const double s2 = sigma * sigma;
  c.see("trace-adjusted variance", std::abs(adjusted.mean - s2), 3.0 * adjusted.standard_error);
  const double z = (squared.mean - s2) / squared.standard_error;
  c.require("squared-factor variant did not overestimate", z > 3.0);
  notes << "squared-factor estimate " << squared.mean << " vs sigma^2 " << s2 << " (z = " << z
        << ", ratio " << squared.mean / s2 << ", expected 1/(1-rho) = " << 1.0 / (1.0 - rho) << "): fails as expected";
  return c.outcome(notes.str());
}

// 7. Decomposition in a two-matrix basis and the canonical bases.
Outcome basis_decomposition() {
  Check c;
  dcm::RngStream rng(1007);
  std::size_t done = 0;
  while (done < kInstances) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 32));
    const DC m = random_dc(n, rng);
    const DC b1 = random_dc(n, rng);
    const DC b2 = random_dc(n, rng);
    if (std::abs(b1.a() * b2.t() - b2.a() * b1.t()) < 1e-3) continue;
    ++done;
    const auto w = dcm::decompose_in_basis(m, b1, b2);
    const auto back = oracle::dense_axpy(w.first, dcm::materialize(b1),
                                         oracle::dense_axpy(w.second, dcm::materialize(b2), DenseMatrix<double>(n, n)));
    c.see("random basis", max_diff(back, dcm::materialize(m)), 1e-10);

    const auto cw = dcm::decompose_canonical(m);
    const auto canon = oracle::dense_axpy(cw.centering, dense_centering(n),
                                          oracle::dense_axpy(cw.mean, DenseMatrix<double>(n, n, 1.0 / static_cast<double>(n)),
                                                             DenseMatrix<double>(n, n)));
    c.see("canonical basis", max_diff(canon, dcm::materialize(m)), 1e-10);

    const auto limits =
        oracle::dense_axpy(cw.lower_limit, dcm::materialize(dcm::lower_limit_equicorrelation(n)),
                           oracle::dense_axpy(cw.upper_limit, dcm::materialize(dcm::upper_limit_equicorrelation(n)),
                                              DenseMatrix<double>(n, n)));
    c.see("limiting equicorrelation basis", max_diff(limits, dcm::materialize(m)), 1e-10);
  }
  return c.outcome();
}

// 8. Structured against dense timings.
Outcome performance() {
  dcmat::BenchOptions opts;
  opts.sizes = {256, 1024};
  opts.trials = 3;
  opts.seed = 8;
  const auto rows = dcmat::bench(opts);
  Check c;
  std::ostringstream s;
  for (const auto& r : rows) {
    if (r.op != "product" && r.op != "inverse") continue;
    const double bar = r.n >= 1024 ? 1000.0 : 100.0;
    s << r.op << "@" << r.n << "=" << static_cast<long long>(r.speedup) << "x ";
    c.require(r.op + " at n=" + std::to_string(r.n) + " below " + std::to_string(static_cast<int>(bar)) + "x",
              r.speedup >= bar);
  }
  auto out = c.outcome();
  out.detail = s.str() + (out.ok ? "" : "; " + out.detail);
  return out;
}

std::string run_binary(const std::string& args) {
  const std::string cmd = std::string("\"") + DCMAT_EXE + "\" " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return {};
  std::string text;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) text.append(buf.data(), got);
  return text;
}

// 9. Byte-identical CLI output across runs.
Outcome cli_determinism() {
  const std::string data = std::string("\"") + DCM_TEST_DATA;
  const std::vector<std::string> commands{
      "center --header " + data + "/matrix.csv\"",
      "center --header --both --format json " + data + "/matrix.csv\"",
      "ss-decomp --header --group-col 1 --value-col 2 " + data + "/groups.csv\"",
      "variance --header --rho 0.3 " + data + "/sample.csv\"",
      "classify --n 4 --a 0.75 --t -0.25",
      "matfun --n 5 --a 2 --t 0.5 --fn exp --format csv",
      "verify --seed 11",
  };
  Check c;
  for (const auto& cmd : commands) {
    const auto first = run_binary(cmd);
    const auto second = run_binary(cmd);
    c.require("empty output: " + cmd, !first.empty());
    c.require("outputs differ: " + cmd, first == second);
  }
  return c.outcome(std::to_string(commands.size()) + " commands compared");
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "determinant and characteristic polynomial", 5.0, determinant_and_char_poly},
      {2, "Fourier diagonalization", 10.0, fourier_diagonalization},
      {3, "closure", 0.0, closure},
      {4, "Fourier duality", 0.0, fourier_duality},
      {5, "centering and sum-of-squares identities", 0.0, statistics},
      {6, "sum-of-squares expectations", 60.0, expectations},
      {7, "basis decomposition", 0.0, basis_decomposition},
      {8, "performance", 0.0, performance},
      {9, "CLI determinism", 0.0, cli_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && secs > c.limit_seconds) {
      o.ok = false;
      o.detail += "; exceeded runtime limit " + std::to_string(c.limit_seconds) + " s";
    }
    if (!o.ok) ++failures;
    std::printf("%s criterion %d: %s [%.3f s] %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
