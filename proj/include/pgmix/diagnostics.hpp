#ifndef PGMIX_DIAGNOSTICS_HPP
#define PGMIX_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "pgmix/model.hpp"

namespace pgmix {

// Sample autocorrelations at lags 0..max_lag with the biased (1/m)
// covariance denominator at every lag (keeps the autocovariance sequence
// PSD). Lag 0 is exactly 1.
std::vector<double> acf(const Vector& series, int max_lag);

// Univariate effective sample size m * lambda^2 / sigma^2: lambda^2 the
// sample variance, sigma^2 the nonoverlapping batch-means long-run variance
// with batch size floor(sqrt(m)), tail remainder discarded.
double ess(const Vector& series);

// Multivariate ESS m * (det Lambda / det Sigma)^{1/d} with Lambda the sample
// covariance and Sigma the multivariate batch-means estimate, batch size
// floor(sqrt(m)). d = 1 takes the determinant-free path and equals ess()
// to machine precision.
double mess(const Matrix& draws);

// Mean squared jump: average of ||row_{i+1} - row_i||^2 over the stored
// consecutive pairs.
double msj(const Matrix& draws);

// A named coordinate subset of the concatenated (eta, tau) draw matrix.
struct CoordGroup {
  std::string name;
  std::vector<int> indices;
};

struct GroupMetrics {
  std::string name;
  double mess = 0.0;
  double mess_per_second = 0.0;
  double msj = 0.0;
};

struct DiagnosticsReport {
  std::vector<std::string> coord_names;
  std::vector<std::vector<double>> acf;  // per coordinate, lags 0..K
  std::vector<double> ess;               // per coordinate
  std::vector<double> ess_per_second;    // per coordinate
  std::vector<GroupMetrics> groups;
  long rows = 0;
  double seconds = 0.0;  // <= 0 means timing unknown; per-second fields are 0
};

// Metrics over a draws matrix (columns named by coord_names); groups select
// column subsets for mESS and MSJ. seconds <= 0 suppresses per-second rates.
DiagnosticsReport diagnose(const Matrix& draws,
                           const std::vector<std::string>& coord_names,
                           const std::vector<CoordGroup>& groups, int max_lag,
                           double seconds);

}  // namespace pgmix

#endif
