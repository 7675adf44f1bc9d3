#ifndef PGMIX_MODEL_HPP
#define PGMIX_MODEL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace pgmix {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;

// Priors: beta ~ N(mu0, Q^{-1}) with Q symmetric PSD (Q = 0 encodes the flat
// prior; all formulas use Q uniformly, so b = Q mu0 vanishes automatically),
// tau_j ~ Gamma(a_j, rate b_j) with b_j = 0 allowed (improper).
struct PriorSpec {
  Vector mu0;     // length p
  Matrix Q;       // p x p, symmetric PSD, zero allowed
  Vector a;       // length r
  Vector b_rate;  // length r, each >= 0

  bool is_flat() const { return Q.size() == 0 || Q.isZero(0.0); }
};

// The logistic linear mixed model: y_i | eta ~ Bernoulli(F(m_i' eta)) with
// F the logistic cdf, eta = (beta, u), M = [X Z], u_j | tau_j ~
// N(0, (1/tau_j) I_{q_j}) for blocks j = 1..r.
struct ModelSpec {
  Matrix X;                 // n x p fixed-effects design
  Matrix Z;                 // n x q random-effects design
  IntVector y;              // length n, each in {0,1}
  std::vector<int> blocks;  // q_1..q_r, sum = q
  PriorSpec prior;

  std::vector<std::string> coef_names;  // p + q names (optional; ingest fills)

  int n() const { return static_cast<int>(X.rows()); }
  int p() const { return static_cast<int>(X.cols()); }
  int q() const { return static_cast<int>(Z.cols()); }
  int r() const { return static_cast<int>(blocks.size()); }

  // M = [X Z], rows m_i'.
  Matrix design() const {
    Matrix m(X.rows(), X.cols() + Z.cols());
    m << X, Z;
    return m;
  }

  // kappa_i = y_i - 1/2.
  Vector kappa() const { return y.cast<double>().array() - 0.5; }
};

// One state of either Gibbs chain.
struct ChainState {
  Vector beta;   // length p
  Vector u;      // length q
  Vector omega;  // length n, > 0 elementwise
  Vector tau;    // length r, > 0 elementwise

  Vector eta() const {
    Vector e(beta.size() + u.size());
    e << beta, u;
    return e;
  }
};

// Report-style invariant check; empty list = valid. Also verifies full
// column rank of X and of M = [X Z] (the rank checks are delegated to the
// ergodicity module's numerical rank).
std::vector<std::string> validate(const ModelSpec& spec);

// The subset of validate's findings that preclude running the samplers.
// The draw preconditions are disjunctive (X or M full column rank, or Q PD),
// so with a PD Q the rank findings are informational: the usual mixed-model
// encoding (intercept plus a full set of group indicators) has a rank
// deficient M by construction and is sampled under a proper beta prior.
// A rank deficient M with full-rank X only voids condition 3 of the GE
// checker (carried by its report); D(tau) > 0 keeps the eta precision PD.
std::vector<std::string> blocking_violations(const ModelSpec& spec);

// Unnormalized log of the augmented joint posterior of (beta, u, omega, tau):
// sum_i [kappa_i m_i'eta - omega_i (m_i'eta)^2 / 2 + log p(omega_i)]
// + log N(u; 0, D(tau)^{-1}) + log priors. Test oracle; throws numeric_error
// naming the term if any contribution is non-finite.
double log_joint_unnorm(const ChainState& state, const ModelSpec& spec);

// log L(beta, tau | y): the u-integral of the likelihood by tensor-product
// Gauss-Hermite quadrature. Oracle for q <= 2 only (cost is exponential
// in q); quad_order >= 20.
double log_marginal_like_quad(const ModelSpec& spec, const Vector& beta,
                              const Vector& tau, int quad_order);

}  // namespace pgmix

#endif
