#ifndef PGMIX_EXPERIMENT_HPP
#define PGMIX_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "pgmix/config.hpp"
#include "pgmix/diagnostics.hpp"
#include "pgmix/ergodicity.hpp"
#include "pgmix/samplers.hpp"

namespace pgmix {

// tau column names: tau_<grouping column>, or tau_1..tau_r without names.
std::vector<std::string> tau_names(const ModelSpec& spec,
                                   const std::vector<std::string>& random_cols);

// eta and tau draws side by side, one column per coordinate.
Matrix stacked_draws(const ChainOutput& output);

// Resolves a group vocabulary name (beta, u, eta, tau, beta_tau1, all) into
// column indices of the stacked draw matrix.
CoordGroup resolve_group(const std::string& name, const ModelSpec& spec);

// Draws file: header + one row per stored iteration, 17 significant digits.
void write_draws_csv(const std::string& path, const Matrix& draws,
                     const std::vector<std::string>& names);

// Round-trips a draws file back into a matrix (header returned separately).
Matrix read_draws_csv(const std::string& path, std::vector<std::string>& names);

std::string diagnostics_to_json(const DiagnosticsReport& report);
std::string ge_report_to_json(const GEReport& report);

// Runs the configured experiment: ingest, validate, sample (concurrently
// when both samplers are selected), diagnose, and persist. Returns the paths
// written; on any failure partial outputs are removed and the error rethrown.
std::vector<std::string> run_experiment(const ExperimentConfig& config);

}  // namespace pgmix

#endif
