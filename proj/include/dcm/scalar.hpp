#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <type_traits>

namespace dcm {

/// Field-like scalar usable as matrix constants: double, long double, or an
/// exact type such as boost::multiprecision::cpp_rational.
template <class T>
concept Scalar = requires(T x, T y) {
  { x + y } -> std::convertible_to<T>;
  { x - y } -> std::convertible_to<T>;
  { x * y } -> std::convertible_to<T>;
  { x / y } -> std::convertible_to<T>;
  { -x } -> std::convertible_to<T>;
  { x < y } -> std::convertible_to<bool>;
  { x == y } -> std::convertible_to<bool>;
  T(0);
  T(1);
};

template <class T>
constexpr bool is_finite(const T& x) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(x);
  } else {
    (void)x;
    return true;
  }
}

template <class T>
constexpr T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

/// x^k by repeated squaring. Exact for exact scalar types; for floating
/// types overflow follows IEEE (infinity).
template <class T>
T ipow(T base, std::uint64_t k) {
  T result(1);
  while (k != 0) {
    if (k & 1u) result = T(result * base);
    k >>= 1;
    if (k != 0) base = T(base * base);
  }
  return result;
}

/// λ^(n-1) without special-casing exact types.
template <class T>
T power_of(const T& base, std::uint64_t k) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::pow(base, static_cast<T>(k));
  } else {
    return ipow(base, k);
  }
}

}  // namespace dcm
