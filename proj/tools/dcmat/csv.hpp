#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcmat {

/// Malformed input. Line and column are 1-based.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Input is well formed but has the wrong shape (empty, ragged, ...).
class shape_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Field {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Record {
  std::vector<Field> fields;
  std::size_t line = 0;
  /// Index of the blank-line separated block the record belongs to.
  std::size_t block = 0;
};

struct ReadOptions {
  bool header = false;      // first record names the columns
  bool whitespace = false;  // fields separated by runs of blanks/tabs instead of commas
};

struct Table {
  std::vector<std::string> header;
  std::vector<Record> records;
  std::size_t blocks = 0;
};

/// Splits RFC-4180 CSV (or whitespace-delimited text) into records. Blank
/// lines end a block and are otherwise ignored.
Table read_table(std::string_view text, const ReadOptions& options);

/// Parses a decimal floating-point field ('.' separator). Non-numeric or
/// non-finite text raises parse_error at the field's position.
double parse_number(const Field& field);

/// Every record as a row of numbers; all rows must have equal length.
std::vector<std::vector<double>> numeric_rows(const Table& table);

}  // namespace dcmat
