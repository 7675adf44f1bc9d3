#include "pgmix/pg_random.hpp"

#include <cmath>

#include "pgmix/errors.hpp"
#include "pgmix/mathutil.hpp"

namespace pgmix {

namespace {

// Proposal crossover for the J*(1,z) rejection sampler; any point of
// [(log 3)/pi^2, 4/log 3] works, 0.64 keeps acceptance essentially uniform
// over z (Polson, Scott & Windle 2013).
constexpr double kT = 0.64;

// Series term (2l+1) exp(-(2l+1)^2 / (8x)) of the PG(1,0) density.
inline double pg_series_term(int l, double x) {
  const double h = 2.0 * l + 1.0;
  return h * std::exp(-h * h / (8.0 * x));
}

// a_n(x): piecewise coefficients of the alternating bound series for J*(1,0)
// (Devroye 2009; the two forms are the small-x and large-x theta expansions,
// glued at kT).
double aterm(int n, double x) {
  const double h = n + 0.5;
  double logf;
  if (x <= kT) {
    logf = std::log(kPi) + std::log(h) +
           1.5 * (std::log(2.0) - std::log(kPi) - std::log(x)) - 2.0 * h * h / x;
  } else {
    logf = std::log(kPi) + std::log(h) - 0.5 * h * h * kPi * kPi * x;
  }
  return std::exp(logf);
}

// Inverse-Gaussian(mu, lambda = 1) via Michael, Schucany & Haas (1976).
double rand_invgauss(double mu, RngStream& rng) {
  const double u = rng.normal();
  const double v = u * u;
  double out = mu + 0.5 * mu * (mu * v - std::sqrt(4.0 * mu * v + mu * mu * v * v));
  if (rng.uniform() > mu / (mu + out)) out = mu * mu / out;
  return out;
}

// Density proportional to x^{-1/2} e^{-x/2} on (1/kT, infinity), by
// shifted-exponential rejection (Chung 1998). Reciprocal gives the
// z = 0 inverse-Gaussian tail on (0, kT).
double trunc_gamma_tail(RngStream& rng) {
  const double c = 1.0 / kT;
  for (;;) {
    const double x = 2.0 * rng.exponential() + c;
    if (rng.uniform() <= std::sqrt(c / x)) return x;
  }
}

// Inverse-Gaussian(1/z, 1) truncated to (0, kT); Windle (2013) Algorithms
// 3 and 4. z = 0 is the untilted case (mu infinite, first branch).
double trunc_invgauss(double z, RngStream& rng) {
  const double mu = 1.0 / z;
  if (!(mu <= kT)) {
    for (;;) {
      const double x = 1.0 / trunc_gamma_tail(rng);
      if (std::log(rng.uniform()) < -0.5 * z * z * x) return x;
    }
  }
  for (;;) {
    const double x = rand_invgauss(mu, rng);
    if (x < kT) return x;
  }
}

inline double log_cosh(double h) {
  const double a = std::fabs(h);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

}  // namespace

// Crossover between the dual theta expansions of the density. Both series
// have terms decreasing from l = 0 throughout (0.028, 0.91), so anywhere in
// that window the alternating tail cut is exact and free of cancellation;
// the small-x form degrades beyond x ~ 2 (leading-term cancellation), the
// large-x form below x ~ 0.05 (slow decay).
constexpr double kDensityCross = 0.25;

double pg1_density(double x, double trunc_tol) {
  if (!(x > 0.0)) throw domain_error("pg1_density: x must be positive");
  if (!(trunc_tol > 0.0)) throw domain_error("pg1_density: trunc_tol must be positive");
  if (x <= kDensityCross) {
    const double pref = 1.0 / std::sqrt(2.0 * kPi * x * x * x);
    double sum = 0.0;
    double sign = 1.0;
    double term = pg_series_term(0, x);
    for (int l = 0; l < 200; ++l) {
      sum += sign * term;
      const double next = pg_series_term(l + 1, x);
      // Stop only on the decreasing branch, where alternation brackets the sum.
      if (next <= term && next <= trunc_tol * sum) return pref * sum;
      term = next;
      sign = -sign;
    }
    throw numeric_error("pg1_density: series did not converge within 200 terms");
  }
  // Dual expansion 4 pi sum (-1)^l (l + 1/2) exp(-2 (l + 1/2)^2 pi^2 x).
  double sum = 0.0;
  double sign = 1.0;
  double term = 0.5 * std::exp(-0.5 * kPi * kPi * x);
  for (int l = 0; l < 200; ++l) {
    sum += sign * term;
    const double h = l + 1.5;
    const double next = h * std::exp(-2.0 * h * h * kPi * kPi * x);
    if (next <= term && next <= trunc_tol * sum) return 4.0 * kPi * sum;
    term = next;
    sign = -sign;
  }
  throw numeric_error("pg1_density: series did not converge within 200 terms");
}

double log_pg_density(double x, double b) {
  if (!(x > 0.0)) throw domain_error("log_pg_density: x must be positive");
  if (!(b >= 0.0)) throw domain_error("log_pg_density: b must be nonnegative");
  // Pull the l = 0 term out of whichever expansion applies, so the log stays
  // finite as x -> 0+ (exp(-1/(8x)) factored) and exact as x -> infinity
  // (exp(-pi^2 x / 2) factored); the remaining series is 1 - O(small).
  double out;
  double sum = 0.0;
  double sign = 1.0;
  double term = 1.0;
  bool converged = false;
  if (x <= kDensityCross) {
    for (int l = 0; l < 200; ++l) {
      sum += sign * term;
      const double h = 2.0 * (l + 1) + 1.0;
      const double next = h * std::exp(-(h * h - 1.0) / (8.0 * x));
      if (next <= term && next <= 1e-12 * sum) {
        converged = true;
        break;
      }
      term = next;
      sign = -sign;
    }
    out = -0.5 * kLogTwoPi - 1.5 * std::log(x) - 1.0 / (8.0 * x);
  } else {
    for (int l = 0; l < 200; ++l) {
      sum += sign * term;
      // (l + 3/2)^2 - 1/4 = (l + 1)(l + 2).
      const double next = (2.0 * l + 3.0) *
                          std::exp(-2.0 * (l + 1.0) * (l + 2.0) * kPi * kPi * x);
      if (next <= term && next <= 1e-12 * sum) {
        converged = true;
        break;
      }
      term = next;
      sign = -sign;
    }
    out = std::log(2.0 * kPi) - 0.5 * kPi * kPi * x;
  }
  if (!converged)
    throw numeric_error("log_pg_density: series did not converge within 200 terms");
  out += std::log(sum);
  if (b > 0.0) out += log_cosh(0.5 * b) - 0.5 * b * b * x;
  return out;
}

double pg_tilted_density(double x, double b, double trunc_tol) {
  if (!(b >= 0.0)) throw domain_error("pg_tilted_density: b must be nonnegative");
  return std::cosh(0.5 * b) * std::exp(-0.5 * b * b * x) * pg1_density(x, trunc_tol);
}

double sample_pg1(double b, RngStream& rng) {
  if (!(b >= 0.0)) throw domain_error("sample_pg1: b must be nonnegative");
  // PG(1, b) = J*(1, z) / 4 at z = b/2.
  const double z = 0.5 * b;
  const double bigk = 0.125 * kPi * kPi + 0.5 * z * z;
  // Mixture weight of the right (truncated exponential) proposal piece:
  // q = (pi / (2K)) e^{-K t}, p = 2 e^{-z} P(IG(1/z, 1) <= t); the ratio
  // p/q is assembled in log space so large z cannot overflow.
  const double w = 1.0 / std::sqrt(kT);
  const double log_common =
      std::log(4.0) - std::log(kPi) - z + std::log(bigk) + bigk * kT;
  const double logf1 = log_common + log_norm_cdf(w * (kT * z - 1.0));
  const double logf2 = log_common + 2.0 * z + log_norm_cdf(-w * (kT * z + 1.0));
  const double p_over_q = std::exp(logf1) + std::exp(logf2);
  const double ratio = 1.0 / (1.0 + p_over_q);

  for (;;) {
    double x;
    if (rng.uniform() < ratio) {
      x = kT + rng.exponential() / bigk;
    } else {
      x = trunc_invgauss(z, rng);
    }
    // Squeeze via the partial sums S_n: accept on an odd n with U <= S_n,
    // restart on an even n with U > S_n (Devroye's alternating criterion).
    double s = aterm(0, x);
    const double u = rng.uniform() * s;
    int n = 0;
    for (;;) {
      ++n;
      if (n & 1) {
        s -= aterm(n, x);
        if (u <= s) return 0.25 * x;
      } else {
        s += aterm(n, x);
        if (u > s) break;
      }
      if (n >= 1000)
        throw numeric_error("sample_pg1: alternating series failed to resolve");
    }
  }
}

double sample_pg_int(int n, double b, RngStream& rng) {
  if (n < 1) throw domain_error("sample_pg_int: n must be a positive integer");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample_pg1(b, rng);
  return sum;
}

double pg_mean(double a, double b) {
  if (!(a > 0.0)) throw domain_error("pg_mean: a must be positive");
  if (!(b >= 0.0)) throw domain_error("pg_mean: b must be nonnegative");
  if (b == 0.0) return 0.25 * a;
  return a * std::tanh(0.5 * b) / (2.0 * b);
}

}  // namespace pgmix
