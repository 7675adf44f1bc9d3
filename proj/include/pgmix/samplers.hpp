#ifndef PGMIX_SAMPLERS_HPP
#define PGMIX_SAMPLERS_HPP

#include <cstdint>
#include <optional>

#include "pgmix/linalg_sampling.hpp"
#include "pgmix/model.hpp"
#include "pgmix/rng.hpp"

namespace pgmix {

enum class SamplerKind { FullGibbs, BlockGibbs };

const char* sampler_name(SamplerKind kind);

// Chain streams are derived as stream id = sampler ordinal, so FG and BG
// under one seed never share randomness and may run concurrently.
inline std::uint64_t chain_stream_id(SamplerKind kind) {
  return static_cast<std::uint64_t>(kind);
}

struct RunConfig {
  SamplerKind kind = SamplerKind::BlockGibbs;
  long iterations = 0;      // m
  long burn_in = 0;         // B < m
  long thin = 1;            // >= 1
  std::uint64_t seed = 0;
  std::optional<ChainState> init;  // default: beta = 0, u = 0, tau = 1
};

struct ChainOutput {
  Matrix draws_eta;  // stored rows x (p + q)
  Matrix draws_tau;  // stored rows x r
  RunConfig config;
  double seconds = 0.0;
};

// omega_i | eta, y ~ PG(1, |m_i' eta|), independently over i.
Vector draw_omega(const Vector& eta, const Matrix& m, RngStream& rng);

// tau_j | u ~ Gamma(a_j + q_j/2, rate b_j + u_j'u_j / 2), independently,
// except on the null set N (some j with b_j = 0 has u_j'u_j == 0 exactly):
// there every tau_j ~ Gamma(1, 1). The membership test is exact floating
// equality, matching the measure-zero definition of N; a tolerance would
// change the transition kernel on a positive-measure set.
Vector draw_tau(const Vector& u, const PriorSpec& prior,
                const std::vector<int>& blocks, RngStream& rng);

// Precision/shift of each Gaussian conditional, exposed so single-step tests
// can verify the sub-step parameters deterministically.
PrecisionDraw beta_precision(const Vector& u, const Vector& omega,
                             const ModelSpec& spec);
PrecisionDraw u_precision(const Vector& beta, const Vector& omega,
                          const Vector& tau, const ModelSpec& spec);

// beta | u, omega, y ~ N((X'OX + Q)^{-1}(X'kappa + Q mu0 - X'OZu), (X'OX + Q)^{-1}).
Vector draw_beta(const Vector& u, const Vector& omega, const ModelSpec& spec,
                 RngStream& rng);

// u | beta, omega, tau, y ~ N((Z'OZ + D)^{-1}(Z'kappa - Z'OXbeta), (Z'OZ + D)^{-1}).
Vector draw_u(const Vector& beta, const Vector& omega, const Vector& tau,
              const ModelSpec& spec, RngStream& rng);

// eta | omega, tau, y ~ N((M'OM + A)^{-1}(M'kappa + b), (M'OM + A)^{-1}).
Vector draw_eta(const Vector& omega, const Vector& tau, const ModelSpec& spec,
                RngStream& rng);

// One full-Gibbs transition, in exactly this order:
//   tau' | u,  omega' | eta,  u' | beta, omega', tau',  beta' | u', omega'.
ChainState fg_step(const ChainState& state, const ModelSpec& spec,
                   RngStream& rng);

// One block-Gibbs transition: (tau', omega') independently given eta
// (they are conditionally independent), then the joint eta' = (beta', u').
ChainState bg_step(const ChainState& state, const ModelSpec& spec,
                   RngStream& rng);

ChainState default_init(const ModelSpec& spec);

// Runs one chain; stores eta and tau draws after burn-in, every thin-th
// iteration (the first post-burn-in iteration is always stored). omega is
// auxiliary and not persisted.
ChainOutput run_chain(const ModelSpec& spec, const RunConfig& config);

}  // namespace pgmix

#endif
