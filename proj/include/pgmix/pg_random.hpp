#ifndef PGMIX_PG_RANDOM_HPP
#define PGMIX_PG_RANDOM_HPP

#include "pgmix/rng.hpp"

namespace pgmix {

// Parameters of the Polya-Gamma family PG(a, b).
struct PGParams {
  double a;  // shape, > 0
  double b;  // tilt, >= 0 (the samplers only need b = |m_i' eta|)
};

// PG(1,0) density by its alternating series, summed until the next term falls
// below trunc_tol times the partial sum (the alternation brackets the truth
// within one term once the terms decrease). Throws domain_error for x <= 0,
// numeric_error if 200 terms do not converge.
double pg1_density(double x, double trunc_tol = 1e-12);

// log of the PG(1, b) density cosh(b/2) exp(-b^2 x / 2) p(x); the leading
// exp(-1/(8x)) factor is pulled out of the series so small x stays finite.
double log_pg_density(double x, double b = 0.0);

// PG(1, b) density (tilted); b = 0 recovers pg1_density.
double pg_tilted_density(double x, double b, double trunc_tol = 1e-12);

// Exact draw from PG(1, b) via the alternating-series rejection sampler for
// the tilted Jacobi variable J*(1, b/2), divided by 4 (Devroye 2009; Polson,
// Scott & Windle 2013; Windle 2013 thesis, Algorithm 6). Crossover between
// the truncated inverse-Gaussian and truncated exponential proposals at
// t = 0.64.
double sample_pg1(double b, RngStream& rng);

// Draw from PG(n, b), n a positive integer, as a sum of n independent
// PG(1, b) draws (the sum-of-gammas representation is additive in a).
double sample_pg_int(int n, double b, RngStream& rng);

// Closed-form mean: a/4 at b = 0, else a tanh(b/2) / (2b).
double pg_mean(double a, double b);

}  // namespace pgmix

#endif
