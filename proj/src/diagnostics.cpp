#include "pgmix/diagnostics.hpp"

#include <cmath>

#include "pgmix/errors.hpp"
#include "pgmix/linalg_sampling.hpp"

namespace pgmix {

std::vector<double> acf(const Vector& series, int max_lag) {
  const long m = series.size();
  if (max_lag < 0) throw domain_error("acf: max_lag must be nonnegative");
  if (m <= max_lag) throw domain_error("acf: series shorter than max_lag");
  const double mean = series.mean();
  const Vector c = series.array() - mean;
  const double g0 = c.squaredNorm() / static_cast<double>(m);
  if (!(g0 > 0.0)) throw numeric_error("acf: degenerate variance (constant series)");
  std::vector<double> out(static_cast<std::size_t>(max_lag) + 1);
  out[0] = 1.0;
  for (int k = 1; k <= max_lag; ++k) {
    const double gk =
        c.head(m - k).dot(c.tail(m - k)) / static_cast<double>(m);
    out[static_cast<std::size_t>(k)] = gk / g0;
  }
  return out;
}

namespace {

// Sample covariance (1/(m-1)) and the nonoverlapping batch-means long-run
// covariance with b = floor(sqrt(m)); only the first a*b rows enter the
// batch means. Shared by ess and mess so the d = 1 case is the same
// arithmetic in both.
void chain_covariances(const Matrix& draws, Matrix& lambda, Matrix& sigma) {
  const long m = draws.rows();
  const long d = draws.cols();
  const long b = static_cast<long>(std::floor(std::sqrt(static_cast<double>(m))));
  const long a = m / b;

  const Eigen::RowVectorXd mean = draws.colwise().mean();
  const Matrix centered = draws.rowwise() - mean;
  lambda = centered.transpose() * centered / static_cast<double>(m - 1);

  Matrix batch_means(a, d);
  for (long k = 0; k < a; ++k)
    batch_means.row(k) =
        draws.middleRows(k * b, b).colwise().mean();
  const Eigen::RowVectorXd used_mean =
      draws.topRows(a * b).colwise().mean();
  const Matrix bc = batch_means.rowwise() - used_mean;
  sigma = static_cast<double>(b) * (bc.transpose() * bc) /
          static_cast<double>(a - 1);
}

void require_nonsingular(const Matrix& s, const char* which) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 1e-12 * std::max(hi, 1.0))) {
    int worst = 0;
    es.eigenvectors().col(0).cwiseAbs().maxCoeff(&worst);
    throw numeric_error(std::string(which) +
                        " covariance is singular (null direction dominated by "
                        "coordinate " +
                        std::to_string(worst) + ")");
  }
}

}  // namespace

double mess(const Matrix& draws) {
  const long m = draws.rows();
  const long d = draws.cols();
  if (d < 1) throw dimension_error("mess: empty draw matrix");
  if (m < 100 * d) throw domain_error("mess: need at least 100 rows per dimension");
  Matrix lambda, sigma;
  chain_covariances(draws, lambda, sigma);
  if (d == 1) {
    if (!(lambda(0, 0) > 0.0) || !(sigma(0, 0) > 0.0))
      throw numeric_error("mess: degenerate variance");
    return static_cast<double>(m) * lambda(0, 0) / sigma(0, 0);
  }
  require_nonsingular(lambda, "sample");
  require_nonsingular(sigma, "batch-means");
  const double logdet_l = chol_spd(lambda).diagonal().array().log().sum() * 2.0;
  const double logdet_s = chol_spd(sigma).diagonal().array().log().sum() * 2.0;
  return static_cast<double>(m) *
         std::exp((logdet_l - logdet_s) / static_cast<double>(d));
}

double ess(const Vector& series) {
  if (series.size() < 100) throw domain_error("ess: need at least 100 points");
  Matrix draws(series.size(), 1);
  draws.col(0) = series;
  return mess(draws);
}

double msj(const Matrix& draws) {
  const long m = draws.rows();
  if (m < 2) throw domain_error("msj: need at least two rows");
  double total = 0.0;
  for (long i = 0; i + 1 < m; ++i)
    total += (draws.row(i + 1) - draws.row(i)).squaredNorm();
  return total / static_cast<double>(m - 1);
}

DiagnosticsReport diagnose(const Matrix& draws,
                           const std::vector<std::string>& coord_names,
                           const std::vector<CoordGroup>& groups, int max_lag,
                           double seconds) {
  const long d = draws.cols();
  if (static_cast<long>(coord_names.size()) != d)
    throw dimension_error("diagnose: coordinate names do not match columns");
  DiagnosticsReport rep;
  rep.coord_names = coord_names;
  rep.rows = draws.rows();
  rep.seconds = seconds;
  rep.acf.reserve(coord_names.size());
  rep.ess.reserve(coord_names.size());
  for (long j = 0; j < d; ++j) {
    rep.acf.push_back(acf(draws.col(j), max_lag));
    const double e = ess(draws.col(j));
    rep.ess.push_back(e);
    rep.ess_per_second.push_back(seconds > 0.0 ? e / seconds : 0.0);
  }
  for (const CoordGroup& g : groups) {
    Matrix sub(draws.rows(), static_cast<long>(g.indices.size()));
    for (std::size_t k = 0; k < g.indices.size(); ++k) {
      if (g.indices[k] < 0 || g.indices[k] >= d)
        throw dimension_error("diagnose: group '" + g.name +
                              "' references column " +
                              std::to_string(g.indices[k]));
      sub.col(static_cast<long>(k)) = draws.col(g.indices[k]);
    }
    GroupMetrics gm;
    gm.name = g.name;
    gm.mess = mess(sub);
    gm.mess_per_second = seconds > 0.0 ? gm.mess / seconds : 0.0;
    gm.msj = msj(sub);
    rep.groups.push_back(std::move(gm));
  }
  return rep;
}

}  // namespace pgmix
