#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace dcmat {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_blank(s[b])) ++b;
  while (e > b && is_blank(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

class Reader {
 public:
  Reader(std::string_view text, const ReadOptions& options) : text_(text), options_(options) {}

  Table run() {
    Table table;
    bool in_block = false;
    bool header_pending = options_.header;
    while (pos_ < text_.size()) {
      const std::size_t line = line_;
      Record rec = options_.whitespace ? whitespace_record() : csv_record();
      rec.line = line;
      if (rec.fields.empty()) {
        if (in_block) {
          ++table.blocks;
          in_block = false;
        }
        continue;
      }
      if (header_pending) {
        for (auto& f : rec.fields) table.header.push_back(f.text);
        header_pending = false;
        continue;
      }
      rec.block = table.blocks;
      in_block = true;
      table.records.push_back(std::move(rec));
    }
    if (in_block) ++table.blocks;
    return table;
  }

 private:
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool at_line_end() const {
    return pos_ >= text_.size() || text_[pos_] == '\n' ||
           (text_[pos_] == '\r' && (pos_ + 1 >= text_.size() || text_[pos_ + 1] == '\n'));
  }

  void consume_line_end() {
    if (pos_ < text_.size() && text_[pos_] == '\r') advance();
    if (pos_ < text_.size() && text_[pos_] == '\n') advance();
  }

  Record whitespace_record() {
    Record rec;
    while (!at_line_end()) {
      while (!at_line_end() && is_blank(peek())) advance();
      if (at_line_end()) break;
      Field f{{}, line_, col_};
      while (!at_line_end() && !is_blank(peek())) {
        f.text.push_back(peek());
        advance();
      }
      rec.fields.push_back(std::move(f));
    }
    consume_line_end();
    return rec;
  }

  Record csv_record() {
    Record rec;
    // A line with only blanks is a block separator, not a record of one empty field.
    std::size_t probe = pos_;
    while (probe < text_.size() && is_blank(text_[probe])) ++probe;
    if (probe >= text_.size() || text_[probe] == '\n' || text_[probe] == '\r') {
      while (!at_line_end()) advance();
      consume_line_end();
      return rec;
    }
    while (true) {
      rec.fields.push_back(csv_field());
      if (pos_ < text_.size() && peek() == ',') {
        advance();
        continue;
      }
      if (!at_line_end()) throw parse_error(line_, col_, "unexpected character after field");
      consume_line_end();
      return rec;
    }
  }

  Field csv_field() {
    while (!at_line_end() && is_blank(peek())) advance();
    Field f{{}, line_, col_};
    if (!at_line_end() && peek() == '"') {
      const std::size_t open_line = line_;
      const std::size_t open_col = col_;
      advance();
      while (true) {
        if (pos_ >= text_.size()) throw parse_error(open_line, open_col, "unterminated quoted field");
        if (peek() == '"') {
          advance();
          if (pos_ < text_.size() && peek() == '"') {
            f.text.push_back('"');
            advance();
            continue;
          }
          break;
        }
        f.text.push_back(peek());
        advance();
      }
      while (!at_line_end() && is_blank(peek())) advance();
      return f;
    }
    std::string raw;
    while (!at_line_end() && peek() != ',') {
      if (peek() == '"') throw parse_error(line_, col_, "quote inside unquoted field");
      raw.push_back(peek());
      advance();
    }
    f.text = trim(raw);
    return f;
  }

  std::string_view text_;
  ReadOptions options_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

Table read_table(std::string_view text, const ReadOptions& options) {
  // Skip a UTF-8 byte-order mark.
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  return Reader(text, options).run();
}

double parse_number(const Field& field) {
  const std::string& s = field.text;
  if (s.empty()) throw parse_error(field.line, field.column, "empty field where a number was expected");
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec == std::errc::result_out_of_range) {
    throw parse_error(field.line, field.column, "number out of range: '" + s + "'");
  }
  if (ec != std::errc() || ptr != last) {
    throw parse_error(field.line, field.column, "not a number: '" + s + "'");
  }
  if (!std::isfinite(value)) throw parse_error(field.line, field.column, "non-finite value: '" + s + "'");
  return value;
}

std::vector<std::vector<double>> numeric_rows(const Table& table) {
  std::vector<std::vector<double>> rows;
  rows.reserve(table.records.size());
  for (const auto& rec : table.records) {
    std::vector<double> row;
    row.reserve(rec.fields.size());
    for (const auto& f : rec.fields) row.push_back(parse_number(f));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw shape_error("line " + std::to_string(rec.line) + ": expected " + std::to_string(rows.front().size()) +
                        " fields, found " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dcmat
