#ifndef PGMIX_MATHUTIL_HPP
#define PGMIX_MATHUTIL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pgmix {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLogTwoPi = 1.83787706640934548356065947281123527;

// log(1 + e^x) without overflow or cancellation (Machler 2012 cutpoints).
inline double log1pexp(double x) {
  if (x <= -37.0) return std::exp(x);
  if (x <= 18.0) return std::log1p(std::exp(x));
  if (x <= 33.3) return x + std::exp(-x);
  return x;
}

inline double norm_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485);
}

// log Phi(x); asymptotic Mills-ratio expansion once erfc underflows.
inline double log_norm_cdf(double x) {
  if (x > -37.0) return std::log(norm_cdf(x));
  const double s = -x;
  const double s2 = s * s;
  const double tail = std::log1p(-1.0 / s2 + 3.0 / (s2 * s2) - 15.0 / (s2 * s2 * s2));
  return -0.5 * s2 - std::log(s) - 0.5 * kLogTwoPi + tail;
}

inline double logsumexp(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace pgmix

#endif
