#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace entorder {

// Compensated (Kahan) accumulator. Fixed left-to-right usage keeps every
// reduction in the library reproducible to the bit.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// ln C(n, k) via log-gamma; valid for n up to the 1e8 regime. The two
// denominator terms are grouped so the result is bit-identical under
// k <-> n-k.
inline double log_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("log_binomial: need 0 <= k <= n");
  return std::lgamma(static_cast<double>(n) + 1.0) -
         (std::lgamma(static_cast<double>(k) + 1.0) +
          std::lgamma(static_cast<double>(n - k) + 1.0));
}

// Exact C(n, k) in integer arithmetic; safe for n <= 60.
inline long long binomial_exact(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("binomial_exact: need 0 <= k <= n");
  if (n > 60) throw std::domain_error("binomial_exact: n too large for exact integers");
  k = std::min(k, n - k);
  long long result = 1;
  for (long long i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;  // exact: divides a product of i consecutive integers
  }
  return result;
}

inline double log2_binomial(long long n, long long k) {
  return log_binomial(n, k) / std::numbers::ln2;
}

// Round half to even, independent of the ambient fenv rounding mode.
inline long long round_half_even(double x) {
  const double fl = std::floor(x);
  const double diff = x - fl;
  long long lo = static_cast<long long>(fl);
  if (diff > 0.5) return lo + 1;
  if (diff < 0.5) return lo;
  return (lo % 2 == 0) ? lo : lo + 1;
}

}  // namespace entorder
