#include "pgmix/samplers.hpp"

#include <chrono>
#include <cmath>

#include "pgmix/errors.hpp"
#include "pgmix/pg_random.hpp"

namespace pgmix {

const char* sampler_name(SamplerKind kind) {
  return kind == SamplerKind::FullGibbs ? "FG" : "BG";
}

Vector draw_omega(const Vector& eta, const Matrix& m, RngStream& rng) {
  if (eta.size() != m.cols())
    throw dimension_error("draw_omega: eta length != cols(M)");
  RngScope scope(rng, "omega");
  const Vector lin = m * eta;
  Vector omega(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    omega[i] = sample_pg1(std::fabs(lin[i]), rng);
  return omega;
}

Vector draw_tau(const Vector& u, const PriorSpec& prior,
                const std::vector<int>& blocks, RngStream& rng) {
  const int r = static_cast<int>(blocks.size());
  RngScope scope(rng, "tau");
  int off = 0;
  bool null_set = false;
  std::vector<double> ssq(r);
  for (int j = 0; j < r; ++j) {
    ssq[j] = u.segment(off, blocks[j]).squaredNorm();
    off += blocks[j];
    if (prior.b_rate[j] == 0.0 && ssq[j] == 0.0) null_set = true;
  }
  Vector tau(r);
  if (null_set) {
    for (int j = 0; j < r; ++j) tau[j] = rng.gamma(1.0, 1.0);
    return tau;
  }
  for (int j = 0; j < r; ++j)
    tau[j] = rng.gamma(prior.a[j] + 0.5 * blocks[j],
                       prior.b_rate[j] + 0.5 * ssq[j]);
  return tau;
}

namespace {

// W'W on the lower triangle with W = sqrt(Omega) A, mirrored afterwards so
// the result is exactly symmetric.
Matrix weighted_gram(const Matrix& a, const Vector& omega) {
  const Matrix w = omega.cwiseSqrt().asDiagonal() * a;
  const int k = static_cast<int>(a.cols());
  Matrix s = Matrix::Zero(k, k);
  s.selfadjointView<Eigen::Lower>().rankUpdate(w.adjoint());
  for (int j = 0; j < k; ++j)
    for (int i = j + 1; i < k; ++i) s(j, i) = s(i, j);
  return s;
}

Vector expand_tau(const Vector& tau, const std::vector<int>& blocks) {
  int q = 0;
  for (int b : blocks) q += b;
  Vector d(q);
  int off = 0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    d.segment(off, blocks[j]).setConstant(tau[static_cast<int>(j)]);
    off += blocks[j];
  }
  return d;
}

}  // namespace

PrecisionDraw beta_precision(const Vector& u, const Vector& omega,
                             const ModelSpec& spec) {
  const Vector kappa = spec.kappa();
  Matrix s = weighted_gram(spec.X, omega);
  // Lower triangle of Q is canonical; mirroring keeps s exactly symmetric.
  for (int j = 0; j < spec.p(); ++j)
    for (int i = j; i < spec.p(); ++i) {
      s(i, j) += spec.prior.Q(i, j);
      s(j, i) = s(i, j);
    }
  Vector t = spec.X.transpose() * (kappa - omega.asDiagonal() * (spec.Z * u));
  t += spec.prior.Q * spec.prior.mu0;
  return PrecisionDraw{std::move(s), std::move(t)};
}

PrecisionDraw u_precision(const Vector& beta, const Vector& omega,
                          const Vector& tau, const ModelSpec& spec) {
  const Vector kappa = spec.kappa();
  Matrix s = weighted_gram(spec.Z, omega);
  s.diagonal() += expand_tau(tau, spec.blocks);
  Vector t = spec.Z.transpose() * (kappa - omega.asDiagonal() * (spec.X * beta));
  return PrecisionDraw{std::move(s), std::move(t)};
}

Vector draw_beta(const Vector& u, const Vector& omega, const ModelSpec& spec,
                 RngStream& rng) {
  RngScope scope(rng, "beta");
  const PrecisionDraw pd = beta_precision(u, omega, spec);
  return chol_solve_sample(pd.precision, pd.shift, rng);
}

Vector draw_u(const Vector& beta, const Vector& omega, const Vector& tau,
              const ModelSpec& spec, RngStream& rng) {
  RngScope scope(rng, "u");
  const PrecisionDraw pd = u_precision(beta, omega, tau, spec);
  return chol_solve_sample(pd.precision, pd.shift, rng);
}

Vector draw_eta(const Vector& omega, const Vector& tau, const ModelSpec& spec,
                RngStream& rng) {
  RngScope scope(rng, "eta");
  const PrecisionDraw pd = build_eta_precision(spec.design(), omega, tau,
                                               spec.prior, spec.blocks,
                                               spec.kappa());
  return chol_solve_sample(pd.precision, pd.shift, rng);
}

ChainState fg_step(const ChainState& state, const ModelSpec& spec,
                   RngStream& rng) {
  ChainState next;
  next.tau = draw_tau(state.u, spec.prior, spec.blocks, rng);
  next.omega = draw_omega(state.eta(), spec.design(), rng);
  next.u = draw_u(state.beta, next.omega, next.tau, spec, rng);
  next.beta = draw_beta(next.u, next.omega, spec, rng);
  return next;
}

ChainState bg_step(const ChainState& state, const ModelSpec& spec,
                   RngStream& rng) {
  ChainState next;
  next.tau = draw_tau(state.u, spec.prior, spec.blocks, rng);
  next.omega = draw_omega(state.eta(), spec.design(), rng);
  const Vector eta = draw_eta(next.omega, next.tau, spec, rng);
  next.beta = eta.head(spec.p());
  next.u = eta.tail(spec.q());
  return next;
}

ChainState default_init(const ModelSpec& spec) {
  ChainState s;
  s.beta = Vector::Zero(spec.p());
  s.u = Vector::Zero(spec.q());
  // omega is redrawn before first use in both algorithms; any positive value
  // keeps the state invariant satisfied.
  s.omega = Vector::Constant(spec.n(), 0.25);
  s.tau = Vector::Ones(spec.r());
  return s;
}

ChainOutput run_chain(const ModelSpec& spec, const RunConfig& config) {
  if (config.iterations < 1)
    throw config_error("run_chain: iterations must be positive");
  if (config.burn_in < 0 || config.burn_in >= config.iterations)
    throw config_error("run_chain: burn_in must satisfy 0 <= B < m");
  if (config.thin < 1) throw config_error("run_chain: thin must be >= 1");

  const long kept = config.iterations - config.burn_in;
  const long rows = (kept + config.thin - 1) / config.thin;
  ChainOutput out;
  out.config = config;
  out.draws_eta.resize(rows, spec.p() + spec.q());
  out.draws_tau.resize(rows, spec.r());

  RngStream rng(config.seed, chain_stream_id(config.kind));
  ChainState state = config.init ? *config.init : default_init(spec);
  if (state.beta.size() != spec.p() || state.u.size() != spec.q() ||
      state.omega.size() != spec.n() ||
      static_cast<int>(state.tau.size()) != spec.r())
    throw dimension_error("run_chain: init state does not match spec dimensions");

  const auto t0 = std::chrono::steady_clock::now();
  long row = 0;
  for (long i = 1; i <= config.iterations; ++i) {
    try {
      state = config.kind == SamplerKind::FullGibbs ? fg_step(state, spec, rng)
                                                    : bg_step(state, spec, rng);
    } catch (const error& e) {
      throw numeric_error("run_chain: iteration " + std::to_string(i) + ": " +
                          e.what());
    }
    if (i > config.burn_in && (i - config.burn_in - 1) % config.thin == 0) {
      out.draws_eta.row(row).head(spec.p()) = state.beta.transpose();
      out.draws_eta.row(row).tail(spec.q()) = state.u.transpose();
      out.draws_tau.row(row) = state.tau.transpose();
      ++row;
    }
  }
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

}  // namespace pgmix
