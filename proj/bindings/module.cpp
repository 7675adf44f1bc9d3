#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pgmix/diagnostics.hpp"
#include "pgmix/ergodicity.hpp"
#include "pgmix/errors.hpp"
#include "pgmix/model.hpp"
#include "pgmix/pg_random.hpp"
#include "pgmix/rng.hpp"
#include "pgmix/samplers.hpp"

namespace py = pybind11;

namespace {

pgmix::SamplerKind parse_kind(const std::string& name) {
  if (name == "FG") return pgmix::SamplerKind::FullGibbs;
  if (name == "BG") return pgmix::SamplerKind::BlockGibbs;
  throw pgmix::config_error("sampler must be 'FG' or 'BG'");
}

pgmix::ModelSpec make_model(const pgmix::Matrix& x, const pgmix::Matrix& z,
                            const pgmix::IntVector& y,
                            const std::vector<int>& blocks,
                            const pgmix::Vector& a, const pgmix::Vector& b,
                            std::optional<pgmix::Vector> mu0,
                            std::optional<pgmix::Matrix> q) {
  pgmix::ModelSpec spec;
  spec.X = x;
  spec.Z = z;
  spec.y = y;
  spec.blocks = blocks;
  spec.prior.a = a;
  spec.prior.b_rate = b;
  spec.prior.mu0 = mu0 ? *mu0 : pgmix::Vector::Zero(spec.p());
  spec.prior.Q = q ? *q : pgmix::Matrix::Zero(spec.p(), spec.p());
  return spec;
}

py::dict run_chain_py(const pgmix::ModelSpec& spec, const std::string& sampler,
                      long iterations, long burn_in, long thin,
                      std::uint64_t seed) {
  pgmix::RunConfig rc;
  rc.kind = parse_kind(sampler);
  rc.iterations = iterations;
  rc.burn_in = burn_in;
  rc.thin = thin;
  rc.seed = seed;
  const pgmix::ChainOutput out = pgmix::run_chain(spec, rc);
  py::dict d;
  d["eta"] = out.draws_eta;
  d["tau"] = out.draws_tau;
  d["seconds"] = out.seconds;
  return d;
}

py::dict check_ge_py(const pgmix::ModelSpec& spec) {
  const pgmix::GEReport rep = pgmix::check_ge(spec);
  py::dict d;
  d["applicable"] = rep.applicable;
  d["note"] = rep.note;
  d["cond1_priors"] = rep.cond1_priors;
  d["cond1_pass"] = rep.cond1_pass;
  d["cond2_shape"] = rep.cond2_shape;
  d["cond2_pass"] = rep.cond2_pass;
  d["rank_m"] = rep.rank_m;
  d["cond3_rank"] = rep.cond3_rank;
  const char* status = "indeterminate";
  if (rep.cond4_status == pgmix::Feasibility::Feasible) status = "feasible";
  if (rep.cond4_status == pgmix::Feasibility::Infeasible) status = "infeasible";
  d["cond4_status"] = status;
  if (rep.witness.size() > 0)
    d["witness"] = rep.witness;
  else
    d["witness"] = py::none();
  d["phase1_objective"] = rep.phase1_objective;
  d["cond4_pass"] = rep.cond4_pass;
  d["overall"] = rep.overall;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pgmix, m) {
  m.doc() = "Polya-Gamma Gibbs samplers for Bayesian logistic linear mixed "
            "models";

  py::register_exception<pgmix::error>(m, "PgmixError", PyExc_ValueError);

  py::class_<pgmix::RngStream>(m, "RngStream",
                               "Deterministic xoshiro256++ stream; distinct "
                               "(seed, stream) pairs are independent.")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
           py::arg("stream") = 0)
      .def("uniform", &pgmix::RngStream::uniform)
      .def("normal", &pgmix::RngStream::normal)
      .def("exponential", &pgmix::RngStream::exponential)
      .def("gamma", &pgmix::RngStream::gamma, py::arg("shape"),
           py::arg("rate"));

  m.def("pg_density", &pgmix::pg_tilted_density, py::arg("x"),
        py::arg("b") = 0.0, py::arg("trunc_tol") = 1e-12,
        "PG(1, b) density at x > 0.");
  m.def("log_pg_density", &pgmix::log_pg_density, py::arg("x"),
        py::arg("b") = 0.0);
  m.def("pg_mean", &pgmix::pg_mean, py::arg("a"), py::arg("b"),
        "E[PG(a, b)] in closed form.");
  m.def(
      "sample_pg1",
      [](double b, pgmix::RngStream& rng) { return pgmix::sample_pg1(b, rng); },
      py::arg("b"), py::arg("rng"), "One exact PG(1, b) draw.");
  m.def(
      "sample_pg_int",
      [](int n, double b, pgmix::RngStream& rng) {
        return pgmix::sample_pg_int(n, b, rng);
      },
      py::arg("n"), py::arg("b"), py::arg("rng"),
      "One PG(n, b) draw as a sum of n PG(1, b) draws.");

  py::class_<pgmix::ModelSpec>(m, "ModelSpec")
      .def_property_readonly("n", &pgmix::ModelSpec::n)
      .def_property_readonly("p", &pgmix::ModelSpec::p)
      .def_property_readonly("q", &pgmix::ModelSpec::q)
      .def_property_readonly("r", &pgmix::ModelSpec::r);

  m.def("make_model", &make_model, py::arg("x"), py::arg("z"), py::arg("y"),
        py::arg("blocks"), py::arg("a"), py::arg("b"),
        py::arg("mu0") = std::nullopt, py::arg("q") = std::nullopt,
        "Assemble a ModelSpec; omitted mu0/q encode the flat beta prior.");
  m.def("validate", &pgmix::validate,
        "List of invariant violations; empty means valid.");
  m.def("blocking_violations", &pgmix::blocking_violations,
        "The subset of validate() findings that preclude sampling.");

  m.def("run_chain", &run_chain_py, py::arg("spec"), py::arg("sampler"),
        py::arg("iterations"), py::arg("burn_in") = 0, py::arg("thin") = 1,
        py::arg("seed") = 0,
        "Run one chain ('FG' or 'BG'); returns eta draws, tau draws, and "
        "wall seconds.");

  m.def("acf", &pgmix::acf, py::arg("series"), py::arg("max_lag"),
        "Autocorrelations at lags 0..max_lag.");
  m.def("ess", &pgmix::ess, py::arg("series"),
        "Univariate effective sample size (batch means).");
  m.def("mess", &pgmix::mess, py::arg("draws"),
        "Multivariate effective sample size (batch means).");
  m.def("msj", &pgmix::msj, py::arg("draws"), "Mean squared jump distance.");

  m.def("check_ge", &check_ge_py, py::arg("spec"),
        "Report on the four sufficient conditions for geometric ergodicity "
        "of the block Gibbs chain under the flat beta prior.");
}
