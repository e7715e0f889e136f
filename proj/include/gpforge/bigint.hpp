#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gpforge {

using BigInt = boost::multiprecision::cpp_int;

/// Remainder of `value` modulo `|modulus|`, always in `[0, |modulus|)`.
inline BigInt floor_mod(const BigInt& value, const BigInt& modulus) {
  BigInt m = abs(modulus);
  BigInt r = value % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace gpforge
