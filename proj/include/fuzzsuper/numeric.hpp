#pragma once

// Small integer-argument special functions used by harmonic normalizations.

#include <cmath>
#include <stdexcept>

namespace fuzzsuper {

/// log(n!) summed exactly over integer factors.
inline long double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial of a negative integer");
  long double s = 0.0L;
  for (int k = 2; k <= n; ++k) s += std::log(static_cast<long double>(k));
  return s;
}

/// log(n!!); (-1)!! = 0!! = 1.
inline long double log_double_factorial(int n) {
  if (n < -1) throw std::domain_error("log_double_factorial below -1");
  long double s = 0.0L;
  for (int k = n; k >= 2; k -= 2) s += std::log(static_cast<long double>(k));
  return s;
}

}  // namespace fuzzsuper
