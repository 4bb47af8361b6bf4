// Exact-arithmetic checks: with rational constants every closed form must
// hold with equality, not just within a tolerance.
#include <catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "dcm/algebra.hpp"
#include "dcm/double_constant.hpp"
#include "dcm/random.hpp"

namespace mp = boost::multiprecision;
using Q = mp::number<mp::cpp_rational_backend, mp::et_off>;
using MQ = dcm::DoubleConstant<Q>;
using dcm::DenseMatrix;

static_assert(dcm::Scalar<Q>);

namespace {

Q q(long long num, long long den = 1) { return Q(num) / Q(den); }

Q random_q(dcm::RngStream& rng) {
  const auto num = static_cast<long long>(rng.integer(0, 40)) - 20;
  const auto den = static_cast<long long>(rng.integer(1, 7));
  return q(num, den);
}

DenseMatrix<Q> matmul(const DenseMatrix<Q>& x, const DenseMatrix<Q>& y) {
  DenseMatrix<Q> out(x.rows(), y.cols(), Q(0));
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t k = 0; k < x.cols(); ++k) {
      for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += x(i, k) * y(k, j);
    }
  }
  return out;
}

// Fraction-exact Gaussian elimination.
Q det(DenseMatrix<Q> a) {
  const std::size_t n = a.rows();
  Q d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == Q(0)) ++p;
    if (p == n) return Q(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Q f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("rational eigenvalue round trip is exact", "[rational]") {
  dcm::RngStream rng(61);
  for (int i = 0; i < 300; ++i) {
    const MQ m(static_cast<std::size_t>(rng.integer(1, 12)), random_q(rng), random_q(rng));
    CHECK(dcm::from_eigenvalues(dcm::eigenvalues(m)) == m);
  }
}

TEST_CASE("rational determinant and characteristic polynomial are exact", "[rational]") {
  CHECK(dcm::determinant(MQ(3, q(2), q(1))) == q(4));
  CHECK(dcm::determinant(MQ::centering(3)) == Q(0));
  dcm::RngStream rng(62);
  for (int i = 0; i < 150; ++i) {
    const MQ m(static_cast<std::size_t>(rng.integer(1, 7)), random_q(rng), random_q(rng));
    CHECK(dcm::determinant(m) == det(dcm::materialize(m)));
    const Q z = random_q(rng);
    CHECK(dcm::char_poly(m, z) == det(dcm::materialize(MQ(m.n(), m.a() - z, m.t()))));
    if (m.n() > 1) CHECK(dcm::char_poly(m, m.lambda_major()) == Q(0));
    CHECK(dcm::char_poly(m, m.lambda_minor()) == Q(0));
  }
}

TEST_CASE("rational classification of any centering matrix", "[rational]") {
  for (std::size_t n = 2; n <= 30; ++n) {
    CHECK(dcm::classify(MQ::centering(n)) == dcm::MatrixClass::CenteringProportional);
    CHECK(dcm::rank(MQ::centering(n)) == n - 1);
  }
}

TEST_CASE("rational products, inverses and powers are exact", "[rational]") {
  const MQ m(3, q(2), q(1));
  CHECK(dcm::inverse(m) == MQ(3, q(3, 4), q(-1, 4)));
  CHECK(dcm::integer_power(m, 0) == MQ::identity(3));
  CHECK(dcm::integer_power(m, -2) == dcm::inverse(m) * dcm::inverse(m));
  CHECK(matmul(dcm::materialize(m), dcm::materialize(dcm::inverse(m))) == DenseMatrix<Q>::identity(3));
  CHECK_THROWS_AS(dcm::inverse(MQ::centering(4)), dcm::singular_matrix_error);

  dcm::RngStream rng(63);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 6));
    const MQ x(n, random_q(rng), random_q(rng));
    const MQ y(n, random_q(rng), random_q(rng));
    const MQ z(n, random_q(rng), random_q(rng));
    CHECK(dcm::materialize(x * y) == matmul(dcm::materialize(x), dcm::materialize(y)));
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    const Q k = random_q(rng);
    const auto lc = dcm::linear_combination({dcm::Term<Q>{k, x}, {Q(1), y}});
    DenseMatrix<Q> ref = dcm::materialize(y);
    const auto dx = dcm::materialize(x);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) ref(r, c) += k * dx(r, c);
    }
    CHECK(dcm::materialize(lc) == ref);
  }
}

TEST_CASE("rational basis and canonical decompositions reconstruct exactly", "[rational]") {
  dcm::RngStream rng(64);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 9));
    const MQ m(n, random_q(rng), random_q(rng));
    const MQ b1(n, random_q(rng), random_q(rng));
    const MQ b2(n, random_q(rng), random_q(rng));
    if (b1.a() * b2.t() == b2.a() * b1.t()) {
      CHECK_THROWS_AS(dcm::decompose_in_basis(m, b1, b2), dcm::proportional_basis_error);
      continue;
    }
    const auto w = dcm::decompose_in_basis(m, b1, b2);
    CHECK(dcm::linear_combination({dcm::Term<Q>{w.first, b1}, {w.second, b2}}) == m);

    const auto c = dcm::decompose_canonical(m);
    const Q nn(n);
    CHECK(dcm::linear_combination({dcm::Term<Q>{c.centering, MQ::centering(n)}, {c.mean, MQ(n, 1 / nn, 1 / nn)}}) == m);
    CHECK(dcm::linear_combination({dcm::Term<Q>{c.lower_limit, dcm::lower_limit_equicorrelation<Q>(n)},
                                   {c.upper_limit, dcm::upper_limit_equicorrelation<Q>(n)}}) == m);
  }
}

TEST_CASE("rational block decomposition reassembles exactly", "[rational]") {
  const dcm::Partition p({2, 3, 4});
  const auto d = dcm::centering_block_decompose<Q>(p);
  CHECK(d.assemble() == dcm::materialize(MQ::centering(9)));
  const auto w = dcm::centering_block_weights<Q>(p);
  CHECK(w == std::vector<Q>{q(7, 2), q(2), q(5, 4)});
  for (std::size_t b = 0; b < p.size(); ++b) {
    const std::size_t off = p.offset(b);
    CHECK(d.remainder(off, off) == w[b] / Q(9));
  }

  dcm::RngStream rng(65);
  for (int i = 0; i < 50; ++i) {
    const dcm::Partition part({static_cast<std::size_t>(rng.integer(1, 4)), static_cast<std::size_t>(rng.integer(1, 4))});
    const MQ m(part.total(), random_q(rng), random_q(rng));
    const std::vector<std::pair<Q, Q>> inner{{random_q(rng), random_q(rng)}, {random_q(rng), random_q(rng)}};
    CHECK(dcm::block_decompose(m, part, std::span<const std::pair<Q, Q>>(inner)).assemble() == dcm::materialize(m));
  }
}
