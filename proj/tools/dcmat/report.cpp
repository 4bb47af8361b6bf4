#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <type_traits>

namespace dcmat {

namespace {

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_number(v);
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n;") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
std::string join(const std::vector<T>& xs, const char* sep, auto&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += fmt(xs[i]);
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Report::to_json() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : entries_) {
    if (!first) out += ",";
    first = false;
    out += json_string(key) + ":";
    out += std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            return json_number(v);
          } else if constexpr (std::is_same_v<T, std::int64_t>) {
            return std::to_string(v);
          } else if constexpr (std::is_same_v<T, std::string>) {
            return json_string(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            return v ? "true" : "false";
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            return "[" + join(v, ",", json_number) + "]";
          } else {
            return "[" + join(v, ",", [](std::int64_t x) { return std::to_string(x); }) + "]";
          }
        },
        value);
  }
  return out + "}\n";
}

std::string Report::to_csv() const {
  std::string head;
  std::string row;
  bool first = true;
  for (const auto& [key, value] : entries_) {
    if (!first) {
      head += ",";
      row += ",";
    }
    first = false;
    head += csv_cell(key);
    row += csv_cell(std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            return format_number(v);
          } else if constexpr (std::is_same_v<T, std::int64_t>) {
            return std::to_string(v);
          } else if constexpr (std::is_same_v<T, std::string>) {
            return v;
          } else if constexpr (std::is_same_v<T, bool>) {
            return v ? "true" : "false";
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            return join(v, ";", format_number);
          } else {
            return join(v, ";", [](std::int64_t x) { return std::to_string(x); });
          }
        },
        value));
  }
  return head + "\n" + row + "\n";
}

std::string matrix_to_csv(const dcm::DenseMatrix<double>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += format_number(m(i, j));
    }
    out += "\n";
  }
  return out;
}

std::string matrix_to_json(const dcm::DenseMatrix<double>& m) {
  std::string out = "{\"rows\":" + std::to_string(m.rows()) + ",\"cols\":" + std::to_string(m.cols()) + ",\"data\":[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += json_number(m(i, j));
    }
    out += "]";
  }
  return out + "]}\n";
}

}  // namespace dcmat
