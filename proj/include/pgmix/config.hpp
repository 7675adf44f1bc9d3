#ifndef PGMIX_CONFIG_HPP
#define PGMIX_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pgmix/diagnostics.hpp"
#include "pgmix/ingest.hpp"
#include "pgmix/samplers.hpp"

namespace pgmix {

// Minimal TOML-style value: string, number, boolean, or a flat array of
// these. Numbers keep their raw spelling so 64-bit seeds survive exactly.
struct ConfigValue {
  enum class Kind { String, Number, Boolean, Array };
  Kind kind = Kind::String;
  std::string str;
  double num = 0.0;
  std::string raw;
  bool boolean = false;
  std::vector<ConfigValue> array;
};

using ConfigTable = std::map<std::string, std::map<std::string, ConfigValue>>;

// Parses the documented TOML-style subset: [section] headers, key = value
// lines, # comments, values as above. Unknown syntax is a config_error.
ConfigTable parse_config_file(const std::string& path);

struct ExperimentConfig {
  DatasetFile dataset;

  // Prior; mu0 empty means zeros. Q = q_scale * I_p unless q_diag is given;
  // both absent (or zero) encodes the flat prior.
  std::vector<double> mu0;
  double q_scale = 0.0;
  std::vector<double> q_diag;
  std::vector<double> a;
  std::vector<double> b;

  std::vector<SamplerKind> samplers;
  long iterations = 0;
  long burn_in = 0;
  long thin = 1;
  std::uint64_t seed = 0;

  int max_lag = 5;
  std::vector<std::string> groups;  // beta, u, eta, tau, beta_tau1, all

  std::string out_dir = "out";
};

// Loads and validates a config file; every section and key must be known.
ExperimentConfig load_config(const std::string& path);

// Fills spec.prior from the config (dimension-checked against p and r).
void apply_prior(const ExperimentConfig& config, ModelSpec& spec);

}  // namespace pgmix

#endif
