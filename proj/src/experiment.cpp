#include "pgmix/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>

#include "json.hpp"
#include "pgmix/errors.hpp"
#include "pgmix/ingest.hpp"

namespace pgmix {

using nlohmann::json;

std::vector<std::string> tau_names(const ModelSpec& spec,
                                   const std::vector<std::string>& random_cols) {
  std::vector<std::string> out;
  for (int j = 0; j < spec.r(); ++j) {
    if (static_cast<int>(random_cols.size()) == spec.r())
      out.push_back("tau_" + random_cols[static_cast<std::size_t>(j)]);
    else
      out.push_back("tau_" + std::to_string(j + 1));
  }
  return out;
}

Matrix stacked_draws(const ChainOutput& output) {
  Matrix m(output.draws_eta.rows(),
           output.draws_eta.cols() + output.draws_tau.cols());
  m << output.draws_eta, output.draws_tau;
  return m;
}

CoordGroup resolve_group(const std::string& name, const ModelSpec& spec) {
  const int p = spec.p(), q = spec.q(), r = spec.r();
  CoordGroup g;
  g.name = name;
  auto range = [&g](int from, int count) {
    for (int i = 0; i < count; ++i) g.indices.push_back(from + i);
  };
  if (name == "beta") {
    range(0, p);
  } else if (name == "u") {
    range(p, q);
  } else if (name == "eta") {
    range(0, p + q);
  } else if (name == "tau") {
    range(p + q, r);
  } else if (name == "beta_tau1") {
    range(0, p);
    g.indices.push_back(p + q);
  } else if (name == "all") {
    range(0, p + q + r);
  } else {
    throw config_error("unknown diagnostics group '" + name +
                       "' (expected beta, u, eta, tau, beta_tau1, or all)");
  }
  return g;
}

void write_draws_csv(const std::string& path, const Matrix& draws,
                     const std::vector<std::string>& names) {
  if (static_cast<long>(names.size()) != draws.cols())
    throw dimension_error("write_draws_csv: names do not match columns");
  std::ofstream out(path);
  if (!out) throw data_error("cannot write '" + path + "'");
  for (std::size_t j = 0; j < names.size(); ++j)
    out << (j ? "," : "") << names[j];
  out << "\n";
  char buf[40];
  for (long i = 0; i < draws.rows(); ++i) {
    for (long j = 0; j < draws.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", draws(i, j));
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
  if (!out) throw data_error("write failed for '" + path + "'");
}

Matrix read_draws_csv(const std::string& path,
                      std::vector<std::string>& names) {
  const CsvTable table = read_csv(path);
  names = table.header;
  Matrix m(static_cast<long>(table.rows.size()),
           static_cast<long>(table.header.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    for (std::size_t j = 0; j < table.header.size(); ++j) {
      char* end = nullptr;
      const std::string& cell = table.rows[i][j];
      m(static_cast<long>(i), static_cast<long>(j)) =
          std::strtod(cell.c_str(), &end);
      if (end == nullptr || *end != '\0' || cell.empty())
        throw data_error("non-numeric cell '" + cell + "' at row " +
                         std::to_string(i + 2) + " of '" + path + "'");
    }
  return m;
}

// Serialized diagnostics carry only seed-determined statistics so the file
// is byte-stable across reruns; wall-clock rates (ess/mess per second) are
// reported in the comparison table instead.
std::string diagnostics_to_json(const DiagnosticsReport& report) {
  json j;
  j["rows"] = report.rows;
  j["coordinates"] = json::array();
  for (std::size_t i = 0; i < report.coord_names.size(); ++i) {
    json c;
    c["name"] = report.coord_names[i];
    c["acf"] = report.acf[i];
    c["ess"] = report.ess[i];
    j["coordinates"].push_back(std::move(c));
  }
  j["groups"] = json::array();
  for (const GroupMetrics& g : report.groups) {
    json c;
    c["name"] = g.name;
    c["mess"] = g.mess;
    c["msj"] = g.msj;
    j["groups"].push_back(std::move(c));
  }
  return j.dump(2) + "\n";
}

std::string ge_report_to_json(const GEReport& report) {
  json j;
  j["applicable"] = report.applicable;
  j["note"] = report.note;
  j["condition1_priors"] = {{"per_block", report.cond1_priors},
                            {"pass", report.cond1_pass}};
  j["condition2_shape"] = {{"per_block", report.cond2_shape},
                           {"pass", report.cond2_pass}};
  j["condition3_rank"] = {{"rank", report.rank_m}, {"pass", report.cond3_rank}};
  json c4;
  switch (report.cond4_status) {
    case Feasibility::Feasible: c4["status"] = "feasible"; break;
    case Feasibility::Infeasible: c4["status"] = "infeasible"; break;
    case Feasibility::Indeterminate: c4["status"] = "indeterminate"; break;
  }
  if (report.witness.size() > 0) {
    std::vector<double> w(report.witness.data(),
                          report.witness.data() + report.witness.size());
    c4["witness"] = w;
  } else {
    c4["witness"] = nullptr;
  }
  c4["phase1_objective"] = report.phase1_objective;
  c4["pass"] = report.cond4_pass;
  j["condition4_null_vector"] = std::move(c4);
  j["overall"] = report.overall;
  return j.dump(2) + "\n";
}

namespace {

void write_text(const std::string& path, const std::string& text,
                std::vector<std::string>& written) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw data_error("write failed for '" + path + "'");
  written.push_back(path);
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& config) {
  ModelSpec spec = ingest(config.dataset);
  apply_prior(config, spec);
  {
    const auto violations = blocking_violations(spec);
    if (!violations.empty()) {
      std::string msg = "model validation failed:";
      for (const auto& v : violations) msg += "\n  - " + v;
      throw data_error(msg);
    }
  }

  std::vector<SamplerKind> kinds;
  for (SamplerKind k : config.samplers)
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end())
      kinds.push_back(k);

  auto run_one = [&spec, &config](SamplerKind kind) {
    RunConfig rc;
    rc.kind = kind;
    rc.iterations = config.iterations;
    rc.burn_in = config.burn_in;
    rc.thin = config.thin;
    rc.seed = config.seed;
    return run_chain(spec, rc);
  };

  std::vector<ChainOutput> outputs(kinds.size());
  if (kinds.size() == 2) {
    // Independent streams (stream id = sampler ordinal) make concurrent
    // execution deterministic.
    auto second = std::async(std::launch::async, run_one, kinds[1]);
    outputs[0] = run_one(kinds[0]);
    outputs[1] = second.get();
  } else {
    outputs[0] = run_one(kinds[0]);
  }

  std::filesystem::create_directories(config.out_dir);
  std::vector<std::string> written;
  std::vector<std::string> names = spec.coef_names;
  if (names.empty())
    for (int j = 0; j < spec.p() + spec.q(); ++j)
      names.push_back("eta_" + std::to_string(j + 1));
  const auto taus = tau_names(spec, config.dataset.random_effects);
  names.insert(names.end(), taus.begin(), taus.end());

  std::vector<CoordGroup> groups;
  for (const std::string& g : config.groups)
    groups.push_back(resolve_group(g, spec));

  try {
    std::vector<DiagnosticsReport> reports;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      const std::string stem =
          kinds[i] == SamplerKind::FullGibbs ? "fg" : "bg";
      const std::string draws_path =
          config.out_dir + "/" + stem + "_draws.csv";
      const Matrix draws = stacked_draws(outputs[i]);
      write_draws_csv(draws_path, draws, names);
      written.push_back(draws_path);

      reports.push_back(
          diagnose(draws, names, groups, config.max_lag, outputs[i].seconds));
      write_text(config.out_dir + "/" + stem + "_diagnostics.json",
                 diagnostics_to_json(reports.back()), written);
    }

    write_text(config.out_dir + "/ge_report.json",
               ge_report_to_json(check_ge(spec)), written);

    // Comparison table: one block of rows per sampler per metric.
    std::string cmp = "sampler,metric,name,value\n";
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      const char* sampler = sampler_name(kinds[i]);
      const DiagnosticsReport& rep = reports[i];
      for (std::size_t c = 0; c < rep.coord_names.size(); ++c)
        for (std::size_t k = 1; k < rep.acf[c].size(); ++k)
          cmp += std::string(sampler) + ",acf_lag" + std::to_string(k) + "," +
                 rep.coord_names[c] + "," + format17(rep.acf[c][k]) + "\n";
      for (std::size_t c = 0; c < rep.coord_names.size(); ++c) {
        cmp += std::string(sampler) + ",ess," + rep.coord_names[c] + "," +
               format17(rep.ess[c]) + "\n";
        cmp += std::string(sampler) + ",ess_per_second," + rep.coord_names[c] +
               "," + format17(rep.ess_per_second[c]) + "\n";
      }
      for (const GroupMetrics& g : rep.groups) {
        cmp += std::string(sampler) + ",mess," + g.name + "," +
               format17(g.mess) + "\n";
        cmp += std::string(sampler) + ",mess_per_second," + g.name + "," +
               format17(g.mess_per_second) + "\n";
        cmp += std::string(sampler) + ",msj," + g.name + "," + format17(g.msj) +
               "\n";
      }
    }
    write_text(config.out_dir + "/comparison.csv", cmp, written);
  } catch (...) {
    for (const std::string& path : written) std::remove(path.c_str());
    throw;
  }
  return written;
}

}  // namespace pgmix
