#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dcm/dense_matrix.hpp"

namespace dcmat {

/// Shortest text for a double that keeps 17 significant digits ("%.17g").
/// Negative zero prints as 0.
std::string format_number(double v);

/// Ordered flat record rendered as a JSON object or as a two-line CSV
/// (header + values). Arrays become JSON arrays, or ';'-joined CSV cells.
class Report {
 public:
  using Value = std::variant<double, std::int64_t, std::string, bool, std::vector<double>, std::vector<std::int64_t>>;

  Report& add(std::string key, Value value) {
    entries_.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  std::string to_json() const;
  std::string to_csv() const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

/// Matrix rendered as CSV rows, or as {"rows":r,"cols":c,"data":[[...],...]}.
std::string matrix_to_csv(const dcm::DenseMatrix<double>& m);
std::string matrix_to_json(const dcm::DenseMatrix<double>& m);

}  // namespace dcmat
