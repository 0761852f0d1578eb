#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hklab {

/// Exact arbitrary-precision rational; all Hilbert-Kunz values use it.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string numerator_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str();
}

inline std::string denominator_string(const Rational& r) {
  return boost::multiprecision::denominator(r).str();
}

/// "n" or "n/d" in lowest terms.
inline std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return numerator_string(r);
  return numerator_string(r) + "/" + denominator_string(r);
}

/// Accepts "n", "-n", "n/d"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

}  // namespace hklab
