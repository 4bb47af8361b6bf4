#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dcm/error.hpp"

namespace dcm {

/// Row-major dense matrix. Used as the materialization target of structured
/// matrices and as the data container for the statistics routines.
template <class Real = double>
class DenseMatrix {
 public:
  using value_type = Real;

  DenseMatrix() = default;

  DenseMatrix(std::size_t rows, std::size_t cols, Real fill = Real(0))
      : rows_(rows), cols_(cols), data_(checked_size(rows, cols), fill) {}

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Real> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != checked_size(rows, cols)) {
      throw dimension_error("DenseMatrix: data length " + std::to_string(data_.size()) +
                            " does not equal rows*cols = " + std::to_string(rows * cols));
    }
  }

  /// Builds from nested rows; every row must have the same length.
  static DenseMatrix from_rows(const std::vector<std::vector<Real>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    std::vector<Real> data;
    data.reserve(checked_size(r, c));
    for (const auto& row : rows) {
      if (row.size() != c) throw dimension_error("DenseMatrix::from_rows: ragged rows");
      data.insert(data.end(), row.begin(), row.end());
    }
    return DenseMatrix(r, c, std::move(data));
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Real(1);
    return m;
  }

  static DenseMatrix column(std::span<const Real> x) {
    return DenseMatrix(x.size(), 1, std::vector<Real>(x.begin(), x.end()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Real& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Real& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Real> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Real> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<Real> col(std::size_t j) const {
    std::vector<Real> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  std::span<Real> data() noexcept { return data_; }
  std::span<const Real> data() const noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  static std::size_t checked_size(std::size_t rows, std::size_t cols) {
    if (cols != 0 && rows > std::numeric_limits<std::size_t>::max() / sizeof(Real) / cols) {
      throw std::length_error("DenseMatrix: " + std::to_string(rows) + "x" + std::to_string(cols) +
                              " exceeds the addressable size");
    }
    return rows * cols;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

/// Largest absolute entrywise difference; dimension_error on shape mismatch.
template <class Real>
Real max_abs_diff(const DenseMatrix<Real>& x, const DenseMatrix<Real>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw dimension_error("max_abs_diff: shapes differ");
  }
  Real worst(0);
  auto xs = x.data();
  auto ys = y.data();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    Real d = xs[k] - ys[k];
    if (d < Real(0)) d = -d;
    if (worst < d) worst = d;
  }
  return worst;
}

}  // namespace dcm
