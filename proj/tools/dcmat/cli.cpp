#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "csv.hpp"
#include "dcm/dcm.hpp"
#include "report.hpp"

namespace dcmat {

namespace {

struct CommonInput {
  std::string path = "-";
  std::string format;
  bool header = false;
  bool whitespace = false;
};

void add_input_options(CLI::App& cmd, CommonInput& input, const std::string& default_format) {
  input.format = default_format;
  cmd.add_option("input", input.path, "Input file, or '-' for standard input")->capture_default_str();
  cmd.add_option("--format", input.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd.add_flag("--header", input.header, "First input line is a header");
  cmd.add_flag("--ws", input.whitespace, "Whitespace-delimited input instead of CSV");
}

Table load_table(const CommonInput& input, std::istream& in) {
  std::string text;
  if (input.path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(input.path, std::ios::binary);
    if (!file) throw parse_error(0, 0, "cannot open input file '" + input.path + "'");
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  Table table = read_table(text, {input.header, input.whitespace});
  if (table.records.empty()) throw shape_error("input contains no data rows");
  return table;
}

dcm::DenseMatrix<double> load_matrix(const CommonInput& input, std::istream& in) {
  const auto rows = numeric_rows(load_table(input, in));
  return dcm::DenseMatrix<double>::from_rows(rows);
}

void emit(const Report& report, const std::string& format, std::ostream& out) {
  out << (format == "csv" ? report.to_csv() : report.to_json());
}

std::vector<std::int64_t> as_int64(std::span<const std::size_t> xs) {
  return {xs.begin(), xs.end()};
}

// --------------------------------------------------------------------------
// center
// --------------------------------------------------------------------------

struct CenterArgs {
  CommonInput input;
  bool rows = false;
  bool both = false;
};

int run_center(const CenterArgs& args, std::istream& in, std::ostream& out) {
  const auto x = load_matrix(args.input, in);
  const auto y = args.both ? dcm::double_center(x) : args.rows ? dcm::center_rows(x) : dcm::center_columns(x);
  out << (args.input.format == "json" ? matrix_to_json(y) : matrix_to_csv(y));
  return kSuccess;
}

// --------------------------------------------------------------------------
// ss-decomp
// --------------------------------------------------------------------------

struct SsArgs {
  CommonInput input;
  std::size_t group_col = 0;  // 1-based; 0 = groups separated by blank lines
  std::size_t value_col = 0;  // 1-based; 0 = the only (or first non-group) column
};

std::vector<std::vector<double>> collect_groups(const SsArgs& args, const Table& table) {
  std::vector<std::vector<double>> groups;
  if (args.group_col == 0) {
    groups.resize(table.blocks);
    for (const auto& rec : table.records) {
      if (args.value_col == 0 && rec.fields.size() != 1) {
        throw shape_error("line " + std::to_string(rec.line) +
                          ": expected one value per line (use --value-col to pick a column)");
      }
      const std::size_t col = args.value_col == 0 ? 0 : args.value_col - 1;
      if (col >= rec.fields.size()) {
        throw shape_error("line " + std::to_string(rec.line) + ": missing column " + std::to_string(col + 1));
      }
      groups[rec.block].push_back(parse_number(rec.fields[col]));
    }
    return groups;
  }
  const std::size_t gcol = args.group_col - 1;
  std::map<std::string, std::size_t> index;
  for (const auto& rec : table.records) {
    if (gcol >= rec.fields.size()) {
      throw shape_error("line " + std::to_string(rec.line) + ": missing group column " + std::to_string(gcol + 1));
    }
    std::size_t vcol = args.value_col == 0 ? (gcol == 0 ? 1 : 0) : args.value_col - 1;
    if (vcol >= rec.fields.size()) {
      throw shape_error("line " + std::to_string(rec.line) + ": missing value column " + std::to_string(vcol + 1));
    }
    const std::string& label = rec.fields[gcol].text;
    auto [it, inserted] = index.emplace(label, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(parse_number(rec.fields[vcol]));
  }
  return groups;
}

int run_ss_decomp(const SsArgs& args, std::istream& in, std::ostream& out) {
  const auto groups = collect_groups(args, load_table(args.input, in));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw shape_error("group " + std::to_string(g + 1) + " is empty");
  }
  const auto d = dcm::pooled_ss_decomposition(groups);
  Report r;
  r.add("pooled_ss", d.pooled_ss)
      .add("group_ss", d.group_ss)
      .add("group_sizes", as_int64(d.group_sizes.blocks()))
      .add("between_term", d.between_term)
      .add("identity_residual", d.identity_residual);
  emit(r, args.input.format, out);
  return kSuccess;
}

// --------------------------------------------------------------------------
// variance
// --------------------------------------------------------------------------

struct VarianceArgs {
  CommonInput input;
  std::optional<double> rho;
};

int run_variance(const VarianceArgs& args, std::istream& in, std::ostream& out) {
  const auto rows = numeric_rows(load_table(args.input, in));
  if (rows.front().size() != 1) throw shape_error("variance expects a single numeric column");
  std::vector<double> x;
  x.reserve(rows.size());
  for (const auto& row : rows) x.push_back(row[0]);
  if (x.size() < 2) throw shape_error("variance needs at least 2 observations (n = " + std::to_string(x.size()) + ")");

  const double ss = dcm::sum_of_squares(x);
  Report r;
  r.add("n", static_cast<std::int64_t>(x.size()))
      .add("ss", ss)
      .add("df", static_cast<std::int64_t>(dcm::degrees_of_freedom(x.size())))
      .add("s2", dcm::sample_variance(x));
  if (args.rho) {
    const auto rep = dcm::effective_df(x.size(), *args.rho);
    r.add("rho", *args.rho)
        .add("df_eff_trace", rep.df_eff)
        .add("n_eff_trace", rep.n_eff)
        .add("df_eff_paper", rep.df_eff_squared)
        .add("n_eff_paper", rep.n_eff_squared)
        .add("s2_adjusted", ss / rep.df_eff)
        .add("s2_adjusted_paper", ss / rep.df_eff_squared);
  }
  emit(r, args.input.format, out);
  return kSuccess;
}

// --------------------------------------------------------------------------
// matfun / classify
// --------------------------------------------------------------------------

struct MatrixArgs {
  std::size_t n = 0;
  double a = 0.0;
  double t = 0.0;
  double tol = 0.0;
  std::string fn;
  std::string format = "json";
};

double parse_exponent(const std::string& text) {
  double y = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, y);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw parse_error(1, 1, "--fn pow:<y> needs a numeric exponent, got '" + text + "'");
  }
  return y;
}

dcm::DoubleConstant<double> apply_function(const dcm::DoubleConstant<double>& m, const std::string& fn) {
  if (fn == "inv") return dcm::inverse(m);
  if (fn == "sqrt") return dcm::sqrt_principal(m);
  if (fn == "exp") return dcm::exp_m(m);
  if (fn == "log") return dcm::log_m(m);
  if (fn.rfind("pow:", 0) == 0) return dcm::power(m, parse_exponent(fn.substr(4)));
  throw parse_error(1, 1, "unknown function '" + fn + "' (expected inv, sqrt, exp, log or pow:<y>)");
}

void add_matrix_fields(Report& r, const dcm::DoubleConstant<double>& m, double tol, const char* a_key,
                       const char* t_key) {
  r.add("n", static_cast<std::int64_t>(m.n()))
      .add(a_key, m.a())
      .add(t_key, m.t())
      .add("lambda_major", m.lambda_major())
      .add("lambda_minor", m.lambda_minor())
      .add("class", std::string(dcm::to_string(dcm::classify(m, tol))));
}

int run_matfun(const MatrixArgs& args, std::ostream& out) {
  const dcm::DoubleConstant<double> m(args.n, args.a, args.t);
  const auto result = apply_function(m, args.fn);
  Report r;
  add_matrix_fields(r, result, args.tol, "a_out", "t_out");
  emit(r, args.format, out);
  return kSuccess;
}

int run_classify(const MatrixArgs& args, std::ostream& out) {
  const dcm::DoubleConstant<double> m(args.n, args.a, args.t);
  Report r;
  add_matrix_fields(r, m, args.tol, "a", "t");
  r.add("rank", static_cast<std::int64_t>(dcm::rank(m, args.tol)))
      .add("determinant", dcm::determinant(m))
      .add("trace", dcm::trace(m));
  emit(r, args.format, out);
  return kSuccess;
}

// --------------------------------------------------------------------------
// bench
// --------------------------------------------------------------------------

struct BenchArgs {
  std::vector<std::size_t> sizes{4, 16, 64, 256};
  std::size_t trials = 5;
  std::uint64_t seed = 1;
};

int run_bench(const BenchArgs& args, std::ostream& out) {
  const auto rows = bench({args.sizes, args.trials, args.seed});
  out << kBenchHeader << "\n";
  for (const auto& row : rows) {
    out << row.n << "," << row.op << "," << format_number(row.structured_ns) << "," << format_number(row.dense_ns)
        << "," << format_number(row.speedup) << "\n";
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured double-constant matrix toolkit", "dcmat"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dcmat 1.0.0");

  CenterArgs center;
  auto* center_cmd = app.add_subcommand("center", "Center columns (default), rows, or both");
  add_input_options(*center_cmd, center.input, "csv");
  auto* rows_flag = center_cmd->add_flag("--rows", center.rows, "Remove row means");
  auto* both_flag = center_cmd->add_flag("--both", center.both, "Remove row and column means");
  rows_flag->excludes(both_flag);

  SsArgs ss;
  auto* ss_cmd = app.add_subcommand("ss-decomp", "Pooled sum-of-squares decomposition");
  add_input_options(*ss_cmd, ss.input, "json");
  ss_cmd->add_option("--group-col", ss.group_col, "1-based column holding group labels")->check(CLI::PositiveNumber);
  ss_cmd->add_option("--value-col", ss.value_col, "1-based column holding values")->check(CLI::PositiveNumber);

  VarianceArgs var;
  auto* var_cmd = app.add_subcommand("variance", "Sample variance, optionally equicorrelation-adjusted");
  add_input_options(*var_cmd, var.input, "json");
  var_cmd->add_option("--rho", var.rho, "Known equicorrelation parameter");

  MatrixArgs mat;
  auto* mat_cmd = app.add_subcommand("matfun", "Closed-form matrix function of M(n, a, t)");
  mat_cmd->add_option("--n", mat.n, "Dimension")->required()->check(CLI::PositiveNumber);
  mat_cmd->add_option("--a", mat.a, "Diagonal constant")->required();
  mat_cmd->add_option("--t", mat.t, "Off-diagonal constant")->required();
  mat_cmd->add_option("--fn", mat.fn, "inv | sqrt | exp | log | pow:<y>")->required();
  mat_cmd->add_option("--tol", mat.tol, "Zero tolerance for the class label")->check(CLI::NonNegativeNumber);
  mat_cmd->add_option("--format", mat.format)->check(CLI::IsMember({"json", "csv"}));

  MatrixArgs cls;
  auto* cls_cmd = app.add_subcommand("classify", "Eigenvalues, class, rank and determinant of M(n, a, t)");
  cls_cmd->add_option("--n", cls.n, "Dimension")->required()->check(CLI::PositiveNumber);
  cls_cmd->add_option("--a", cls.a, "Diagonal constant")->required();
  cls_cmd->add_option("--t", cls.t, "Off-diagonal constant")->required();
  cls_cmd->add_option("--tol", cls.tol, "Zero tolerance")->check(CLI::NonNegativeNumber);
  cls_cmd->add_option("--format", cls.format)->check(CLI::IsMember({"json", "csv"}));

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Time structured against dense operations (CSV)");
  bench_cmd->add_option("--n-list", bench_args.sizes, "Comma-separated sizes")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--trials", bench_args.trials, "Trials per timing (median reported)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed, "Seed for the random operands")->capture_default_str();

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in invariant suite");
  verify_cmd->add_option("--seed", verify_opts.seed, "Seed for random instances")->capture_default_str();
  verify_cmd->add_option("--max-n", verify_opts.max_n, "Largest dimension exercised")
      ->check(CLI::Range(2, 512))
      ->capture_default_str();

  std::vector<const char*> argv{"dcmat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "dcmat: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (center_cmd->parsed()) return run_center(center, in, out);
    if (ss_cmd->parsed()) return run_ss_decomp(ss, in, out);
    if (var_cmd->parsed()) return run_variance(var, in, out);
    if (mat_cmd->parsed()) return run_matfun(mat, out);
    if (cls_cmd->parsed()) return run_classify(cls, out);
    if (bench_cmd->parsed()) return run_bench(bench_args, out);
    if (verify_cmd->parsed()) return verify(verify_opts, out);
  } catch (const parse_error& e) {
    err << "dcmat: parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const shape_error& e) {
    err << "dcmat: " << e.what() << "\n";
    return kShapeError;
  } catch (const dcm::empty_input_error& e) {
    err << "dcmat: " << e.what() << "\n";
    return kShapeError;
  } catch (const dcm::dimension_error& e) {
    err << "dcmat: " << e.what() << "\n";
    return kShapeError;
  } catch (const dcm::domain_error& e) {
    err << "dcmat: domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "dcmat: internal error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kParseError;
}

}  // namespace dcmat
