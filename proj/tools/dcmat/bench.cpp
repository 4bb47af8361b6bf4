#include <algorithm>
#include <chrono>
#include <vector>

#include "cli.hpp"
#include "dcm/dcm.hpp"
#include "dcm/oracle.hpp"
#include "dcm/random.hpp"

namespace dcmat {

namespace {

using Clock = std::chrono::steady_clock;

template <class T>
void keep(const T& value) {
  asm volatile("" : : "g"(&value) : "memory");
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

/// Nanoseconds per call of `fn`, repeated until at least ~2 ms elapse so
/// that constant-time operations are measurable.
template <class Fn>
double time_per_call(Fn&& fn) {
  std::size_t reps = 1;
  while (true) {
    const auto start = Clock::now();
    for (std::size_t r = 0; r < reps; ++r) fn();
    const double ns = std::chrono::duration<double, std::nano>(Clock::now() - start).count();
    if (ns >= 2e6 || reps >= (std::size_t{1} << 30)) return ns / static_cast<double>(reps);
    reps *= ns < 1e5 ? 16 : 2;
  }
}

struct Operands {
  dcm::DoubleConstant<double> x;
  dcm::DoubleConstant<double> y;
  std::vector<double> v;
};

Operands draw(std::size_t n, dcm::RngStream& rng) {
  // Diagonally dominant, so both are invertible and the dense inverse is stable.
  const double tx = rng.uniform(-1.0, 1.0);
  const double ty = rng.uniform(-1.0, 1.0);
  const double nd = static_cast<double>(n);
  Operands o{{n, nd + 2.0 + rng.uniform(), tx}, {n, nd + 2.0 + rng.uniform(), ty}, {}};
  o.v.resize(n);
  for (auto& e : o.v) e = rng.uniform(-1.0, 1.0);
  return o;
}

}  // namespace

std::vector<BenchRow> bench(const BenchOptions& options) {
  std::vector<std::size_t> sizes = options.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  const std::size_t trials = std::max<std::size_t>(1, options.trials);

  std::vector<BenchRow> rows;
  dcm::RngStream rng(options.seed);
  for (std::size_t n : sizes) {
    if (n == 0) continue;
    std::vector<double> s_apply, d_apply, s_inv, d_inv, s_prod, d_prod;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      Operands o = draw(n, rng);  // not const: the barrier below may "modify" it
      const auto dx = dcm::materialize(o.x);
      const auto dy = dcm::materialize(o.y);
      const std::span<const double> v(o.v);

      s_apply.push_back(time_per_call([&] { keep(o); keep(dcm::apply(o.x, v)); }));
      d_apply.push_back(time_per_call([&] { keep(dcm::oracle::dense_matvec(dx, v)); }));
      s_inv.push_back(time_per_call([&] { keep(o); keep(dcm::inverse(o.x)); }));
      d_inv.push_back(time_per_call([&] { keep(dcm::oracle::dense_inverse(dx)); }));
      s_prod.push_back(time_per_call([&] { keep(o); keep(o.x * o.y); }));
      d_prod.push_back(time_per_call([&] { keep(dcm::oracle::dense_matmul(dx, dy)); }));
    }
    auto add = [&](const char* op, const std::vector<double>& s, const std::vector<double>& d) {
      const double sm = median(s);
      const double dm = median(d);
      rows.push_back({n, op, sm, dm, sm > 0.0 ? dm / sm : 0.0});
    };
    add("apply", s_apply, d_apply);
    add("inverse", s_inv, d_inv);
    add("product", s_prod, d_prod);
  }
  return rows;
}

}  // namespace dcmat
