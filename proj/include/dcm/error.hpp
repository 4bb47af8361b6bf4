#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace dcm {

/// Operand shapes disagree (different n, wrong vector length, ...).
class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the set on which the operation is defined.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A zero eigenvalue prevents inversion.
class singular_matrix_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Two basis matrices are proportional, so they do not span the class.
class proportional_basis_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// A least-squares design has (numerically) dependent columns.
class rank_deficient_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// A sequence that must be nonempty was empty.
class empty_input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed quantity violated an identity it is guaranteed to satisfy.
class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

/// Round-trippable text for a double in diagnostics.
inline std::string show(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

}  // namespace dcm
