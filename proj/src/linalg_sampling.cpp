#include "pgmix/linalg_sampling.hpp"

#include <cmath>

#include "pgmix/errors.hpp"

namespace pgmix {

Matrix chol_spd(const Matrix& s) {
  if (s.rows() != s.cols()) throw dimension_error("chol_spd: matrix not square");
  const int k = static_cast<int>(s.rows());
  const double scale = k > 0 ? s.cwiseAbs().maxCoeff() : 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (std::fabs(s(i, j) - s(j, i)) > 1e-10 * (1.0 + scale))
        throw domain_error("chol_spd: matrix not symmetric within tolerance");

  Matrix l = Matrix::Zero(k, k);
  for (int j = 0; j < k; ++j) {
    double d = s(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > 0.0))
      throw singularity_error("chol_spd: matrix not positive definite", j);
    d = std::sqrt(d);
    l(j, j) = d;
    for (int i = j + 1; i < k; ++i)
      l(i, j) = (s(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / d;
  }
  return l;
}

Vector chol_solve_sample(const Matrix& s, const Vector& t, RngStream& rng) {
  if (t.size() != s.rows())
    throw dimension_error("chol_solve_sample: shift length does not match matrix");
  const Matrix l = chol_spd(s);
  Vector w = l.triangularView<Eigen::Lower>().solve(t);
  for (int i = 0; i < w.size(); ++i) w[i] += rng.normal();
  return l.transpose().triangularView<Eigen::Upper>().solve(w);
}

PrecisionDraw build_eta_precision(const Matrix& m, const Vector& omega,
                                  const Vector& tau, const PriorSpec& prior,
                                  const std::vector<int>& blocks,
                                  const Vector& kappa) {
  const int n = static_cast<int>(m.rows());
  const int k = static_cast<int>(m.cols());
  const int p = static_cast<int>(prior.mu0.size());
  int q = 0;
  for (int b : blocks) q += b;
  if (k != p + q)
    throw dimension_error("build_eta_precision: cols(M) != p + sum(blocks)");
  if (omega.size() != n || kappa.size() != n)
    throw dimension_error("build_eta_precision: omega/kappa length != rows(M)");
  if (static_cast<int>(tau.size()) != static_cast<int>(blocks.size()))
    throw dimension_error("build_eta_precision: tau length != number of blocks");
  if (prior.Q.rows() != p || prior.Q.cols() != p)
    throw dimension_error("build_eta_precision: Q is not p x p");
  if ((omega.array() <= 0.0).any())
    throw domain_error("build_eta_precision: omega must be positive");
  if ((tau.array() <= 0.0).any())
    throw domain_error("build_eta_precision: tau must be positive");

  // Row-scaled Gram: S = W'W with W = sqrt(Omega) M, accumulated on the
  // lower triangle only.
  const Matrix w = omega.cwiseSqrt().asDiagonal() * m;
  Matrix s = Matrix::Zero(k, k);
  s.selfadjointView<Eigen::Lower>().rankUpdate(w.adjoint());

  // A(tau): the prior block for beta, then tau_j on each u_j diagonal run.
  for (int j = 0; j < p; ++j)
    for (int i = j; i < p; ++i) s(i, j) += prior.Q(i, j);
  int off = p;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    s.diagonal().segment(off, blocks[j]).array() += tau[static_cast<int>(j)];
    off += blocks[j];
  }
  for (int j = 0; j < k; ++j)
    for (int i = j + 1; i < k; ++i) s(j, i) = s(i, j);

  Vector t = m.transpose() * kappa;
  t.head(p) += prior.Q * prior.mu0;
  return PrecisionDraw{std::move(s), std::move(t)};
}

}  // namespace pgmix
