#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dcmat {

/// Process exit codes. No other value is ever returned.
enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kParseError = 2,
  kShapeError = 3,
  kDomainError = 4,
};

/// Runs one command line (args excludes the program name). Reads data from
/// the named file or from `in`, writes results to `out` and diagnostics to
/// `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::vector<std::size_t> sizes{4, 16, 64, 256};
  std::size_t trials = 5;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::size_t n = 0;
  std::string op;
  double structured_ns = 0.0;
  double dense_ns = 0.0;
  double speedup = 0.0;
};

/// Median timings of structured vs dense product, inverse and apply, sorted
/// by (n, op).
std::vector<BenchRow> bench(const BenchOptions& options);

inline constexpr const char* kBenchHeader = "n,op,structured_ns,dense_ns,speedup";

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t max_n = 32;
  /// Test hook: name of an invariant whose computed value is perturbed so the
  /// harness must report it. Not reachable from the command line.
  std::optional<std::string> inject_fault;
};

/// Runs the invariant suite, printing one PASS/FAIL line per invariant.
/// Returns kSuccess or kVerificationFailure.
int verify(const VerifyOptions& options, std::ostream& out);

/// Names of the invariants checked by `verify`, in execution order.
std::vector<std::string> verify_invariant_names();

}  // namespace dcmat
