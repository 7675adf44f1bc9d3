#ifndef PGMIX_LINALG_SAMPLING_HPP
#define PGMIX_LINALG_SAMPLING_HPP

#include <vector>

#include "pgmix/model.hpp"
#include "pgmix/rng.hpp"

namespace pgmix {

// Precision-parameterized Gaussian: x ~ N(S^{-1} t, S^{-1}).
struct PrecisionDraw {
  Matrix precision;  // S, symmetric positive definite
  Vector shift;      // t
};

// Lower Cholesky factor of an SPD matrix, S = L L'. Fails loudly (no jitter):
// a nonpositive pivot throws singularity_error carrying the pivot index, and
// asymmetry beyond 1e-10 relative throws domain_error.
Matrix chol_spd(const Matrix& s);

// Draw x ~ N(S^{-1} t, S^{-1}) without forming S^{-1}: factor S = LL',
// forward-solve L w = t, draw z ~ N(0, I_k), back-solve L' x = w + z.
Vector chol_solve_sample(const Matrix& s, const Vector& t, RngStream& rng);

// Assemble the eta-conditional precision and shift:
//   S = M' Omega M + A(tau),  A(tau) = blockdiag(Q, D(tau)),
//   t = M' kappa + (Q mu0; 0),  D(tau) = direct sum of tau_j I_{q_j}.
// Omega enters by row scaling (never materialized as n x n); S is formed on
// the lower triangle and mirrored, so it is exactly symmetric.
PrecisionDraw build_eta_precision(const Matrix& m, const Vector& omega,
                                  const Vector& tau, const PriorSpec& prior,
                                  const std::vector<int>& blocks,
                                  const Vector& kappa);

}  // namespace pgmix

#endif
