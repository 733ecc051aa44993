#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "profinite/error.hpp"

namespace profinite {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw InvalidArgument("expected a decimal integer, got '" +
                          std::string(text) + "'");
  }
  BigInt v = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') {
      throw InvalidArgument("expected a decimal integer, got '" +
                            std::string(text) + "'");
    }
    v *= 10;
    v += c - '0';
  }
  return negative ? BigInt(-v) : v;
}

// Least nonnegative residue of v modulo m (m > 0).
inline BigInt mod_floor(const BigInt& v, const BigInt& m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r;
}

inline std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) {
  return mod_floor(v, BigInt(m)).convert_to<std::uint64_t>();
}

inline BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt lcm_upto(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r = boost::multiprecision::lcm(r, BigInt(i));
  return r;
}

inline bool fits_u64(const BigInt& v) {
  return v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

}  // namespace profinite
