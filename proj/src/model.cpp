#include "pgmix/model.hpp"

#include <cmath>

#include "pgmix/errors.hpp"
#include "pgmix/ergodicity.hpp"
#include "pgmix/mathutil.hpp"
#include "pgmix/pg_random.hpp"

namespace pgmix {

std::vector<std::string> validate(const ModelSpec& spec) {
  std::vector<std::string> out;
  const int n = spec.n(), p = spec.p(), q = spec.q(), r = spec.r();

  if (n < 1) out.push_back("n >= 1 fails (empty design)");
  if (p < 1) out.push_back("p >= 1 fails (X has no columns)");
  if (q < 1) out.push_back("q >= 1 fails (Z has no columns)");
  if (r < 1) out.push_back("r >= 1 fails (no random-effect blocks)");
  if (spec.Z.rows() != n) out.push_back("rows(Z) != rows(X)");
  if (spec.y.size() != n) out.push_back("length(y) != rows(X)");

  int qsum = 0;
  bool blocks_ok = true;
  for (int b : spec.blocks) {
    if (b < 1) blocks_ok = false;
    qsum += b;
  }
  if (!blocks_ok) out.push_back("block sizes must be positive");
  if (qsum != q) out.push_back("block sizes inconsistent (sum q_j != q)");

  for (int i = 0; i < spec.y.size(); ++i)
    if (spec.y[i] != 0 && spec.y[i] != 1) {
      out.push_back("y not binary at index " + std::to_string(i));
      break;
    }

  const PriorSpec& pr = spec.prior;
  if (pr.mu0.size() != p) out.push_back("length(mu0) != p");
  if (pr.Q.rows() != p || pr.Q.cols() != p) out.push_back("Q is not p x p");
  if (pr.Q.rows() == p && pr.Q.cols() == p && p > 0) {
    const double scale = 1.0 + pr.Q.cwiseAbs().maxCoeff();
    if ((pr.Q - pr.Q.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
      out.push_back("Q not symmetric");
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> es(pr.Q);
      if (es.eigenvalues().minCoeff() < -1e-10 * scale)
        out.push_back("Q not positive semidefinite");
    }
  }
  if (pr.a.size() != r) out.push_back("length(a) != r");
  if (pr.b_rate.size() != r) out.push_back("length(b) != r");
  if (pr.a.size() == r && static_cast<int>(spec.blocks.size()) == r) {
    for (int j = 0; j < r; ++j)
      if (!(pr.a[j] + 0.5 * spec.blocks[j] > 0.0)) {
        out.push_back("a_j + q_j/2 > 0 fails at block " + std::to_string(j));
        break;
      }
  }
  if (pr.b_rate.size() == r)
    for (int j = 0; j < r; ++j)
      if (pr.b_rate[j] < 0.0) {
        out.push_back("b_j >= 0 fails at block " + std::to_string(j));
        break;
      }

  if (out.empty()) {
    if (!check_rank(spec.X).second) out.push_back("X is column rank deficient");
    if (!check_rank(spec.design()).second)
      out.push_back("M = [X Z] is column rank deficient");
  }
  return out;
}

std::vector<std::string> blocking_violations(const ModelSpec& spec) {
  const auto all = validate(spec);

  bool q_pd = false;
  const int p = spec.p();
  if (spec.prior.Q.rows() == p && spec.prior.Q.cols() == p && p > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(spec.prior.Q);
    const double scale = 1.0 + spec.prior.Q.cwiseAbs().maxCoeff();
    q_pd = es.eigenvalues().minCoeff() > 1e-12 * scale;
  }

  std::vector<std::string> out;
  for (const std::string& v : all) {
    if (v == "M = [X Z] is column rank deficient") continue;
    if (v == "X is column rank deficient" && q_pd) continue;
    out.push_back(v);
  }
  return out;
}

double log_joint_unnorm(const ChainState& state, const ModelSpec& spec) {
  const int n = spec.n(), p = spec.p(), q = spec.q(), r = spec.r();
  if (state.beta.size() != p || state.u.size() != q ||
      state.omega.size() != n || static_cast<int>(state.tau.size()) != r)
    throw dimension_error("log_joint_unnorm: state does not match spec");

  const Matrix m = spec.design();
  const Vector kappa = spec.kappa();
  const Vector eta = state.eta();
  const Vector lin = m * eta;

  double loglik = 0.0;
  for (int i = 0; i < n; ++i) {
    loglik += kappa[i] * lin[i] - 0.5 * state.omega[i] * lin[i] * lin[i] +
              log_pg_density(state.omega[i]);
  }
  if (!std::isfinite(loglik))
    throw numeric_error("log_joint_unnorm: augmented likelihood term non-finite");

  double logu = -0.5 * q * kLogTwoPi;
  int off = 0;
  for (int j = 0; j < r; ++j) {
    const int qj = spec.blocks[j];
    const double ssq = state.u.segment(off, qj).squaredNorm();
    logu += 0.5 * qj * std::log(state.tau[j]) - 0.5 * state.tau[j] * ssq;
    off += qj;
  }
  if (!std::isfinite(logu))
    throw numeric_error("log_joint_unnorm: random-effect term non-finite");

  const Vector centered = state.beta - spec.prior.mu0;
  const double logbeta = -0.5 * centered.dot(spec.prior.Q * centered);
  if (!std::isfinite(logbeta))
    throw numeric_error("log_joint_unnorm: beta prior term non-finite");

  double logtau = 0.0;
  for (int j = 0; j < r; ++j)
    logtau += (spec.prior.a[j] - 1.0) * std::log(state.tau[j]) -
              spec.prior.b_rate[j] * state.tau[j];
  if (!std::isfinite(logtau))
    throw numeric_error("log_joint_unnorm: tau prior term non-finite");

  return loglik + logu + logbeta + logtau;
}

namespace {

// Gauss-Hermite nodes/weights for weight e^{-s^2}: Golub-Welsch on the
// symmetric tridiagonal Jacobi matrix (off-diagonals sqrt(k/2)).
void gauss_hermite(int order, Vector& nodes, Vector& weights) {
  Matrix jac = Matrix::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double off = std::sqrt(0.5 * k);
    jac(k, k - 1) = off;
    jac(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(jac);
  nodes = es.eigenvalues();
  weights.resize(order);
  const double sqrtpi = std::sqrt(kPi);
  for (int k = 0; k < order; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    weights[k] = sqrtpi * v0 * v0;
  }
}

double bernoulli_loglik(const ModelSpec& spec, const Vector& eta) {
  const Vector lin = spec.design() * eta;
  double ll = 0.0;
  for (int i = 0; i < spec.n(); ++i)
    ll -= log1pexp(spec.y[i] == 1 ? -lin[i] : lin[i]);
  return ll;
}

}  // namespace

double log_marginal_like_quad(const ModelSpec& spec, const Vector& beta,
                              const Vector& tau, int quad_order) {
  const int q = spec.q();
  if (q > 2)
    throw domain_error("log_marginal_like_quad: q > 2 unsupported (quadrature "
                       "cost is exponential in q)");
  if (quad_order < 20)
    throw domain_error("log_marginal_like_quad: quad_order must be >= 20");
  if (beta.size() != spec.p())
    throw dimension_error("log_marginal_like_quad: beta length != p");
  if (static_cast<int>(tau.size()) != spec.r())
    throw dimension_error("log_marginal_like_quad: tau length != r");
  if ((tau.array() <= 0.0).any())
    throw domain_error("log_marginal_like_quad: tau must be positive");

  Vector nodes, weights;
  gauss_hermite(quad_order, nodes, weights);

  // Coordinate l of u belongs to the block containing it; under
  // u_l = s sqrt(2 / tau_block), each Gaussian factor contributes
  // pi^{-1/2} e^{-s^2} ds.
  std::vector<double> coord_scale(q);
  {
    int off = 0;
    for (int j = 0; j < spec.r(); ++j) {
      for (int l = 0; l < spec.blocks[j]; ++l)
        coord_scale[off + l] = std::sqrt(2.0 / tau[j]);
      off += spec.blocks[j];
    }
  }

  Vector eta(spec.p() + q);
  eta.head(spec.p()) = beta;
  std::vector<double> logterms;
  if (q == 1) {
    logterms.reserve(quad_order);
    for (int i = 0; i < quad_order; ++i) {
      eta[spec.p()] = nodes[i] * coord_scale[0];
      logterms.push_back(std::log(weights[i]) + bernoulli_loglik(spec, eta));
    }
  } else {
    logterms.reserve(static_cast<std::size_t>(quad_order) * quad_order);
    for (int i = 0; i < quad_order; ++i)
      for (int j = 0; j < quad_order; ++j) {
        eta[spec.p()] = nodes[i] * coord_scale[0];
        eta[spec.p() + 1] = nodes[j] * coord_scale[1];
        logterms.push_back(std::log(weights[i]) + std::log(weights[j]) +
                           bernoulli_loglik(spec, eta));
      }
  }
  return logsumexp(logterms) - 0.5 * q * std::log(kPi);
}

}  // namespace pgmix
