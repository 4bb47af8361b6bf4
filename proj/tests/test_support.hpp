#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "dcm/dense_matrix.hpp"
#include "dcm/double_constant.hpp"
#include "dcm/oracle.hpp"
#include "dcm/random.hpp"

namespace dcm_test {

inline std::vector<double> random_vector(std::size_t n, dcm::RngStream& rng, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (auto& e : v) e = rng.uniform(lo, hi);
  return v;
}

inline dcm::DenseMatrix<double> random_dense(std::size_t rows, std::size_t cols, dcm::RngStream& rng,
                                             double lo = -1.0, double hi = 1.0) {
  dcm::DenseMatrix<double> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  }
  return m;
}

inline double max_diff(std::span<const double> x, std::span<const double> y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

/// Dense k1·m1 + k2·m2, computed entrywise without the structured algebra.
inline dcm::DenseMatrix<double> combine(double k1, const dcm::DoubleConstant<double>& m1, double k2,
                                        const dcm::DoubleConstant<double>& m2) {
  return dcm::oracle::dense_axpy(k1, dcm::materialize(m1),
                                 dcm::oracle::dense_axpy(k2, dcm::materialize(m2),
                                                         dcm::DenseMatrix<double>(m1.n(), m1.n())));
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace dcm_test
