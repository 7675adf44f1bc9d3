#include "pgmix/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "pgmix/errors.hpp"

namespace pgmix {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Strips a # comment that is not inside a double-quoted string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

ConfigValue parse_scalar(const std::string& token, int lineno) {
  ConfigValue v;
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
    v.kind = ConfigValue::Kind::String;
    v.str = token.substr(1, token.size() - 2);
    return v;
  }
  if (token == "true" || token == "false") {
    v.kind = ConfigValue::Kind::Boolean;
    v.boolean = token == "true";
    return v;
  }
  char* end = nullptr;
  v.num = std::strtod(token.c_str(), &end);
  if (end == nullptr || *end != '\0' || token.empty())
    throw config_error("line " + std::to_string(lineno) +
                       ": cannot parse value '" + token + "'");
  v.kind = ConfigValue::Kind::Number;
  v.raw = token;
  return v;
}

ConfigValue parse_value(const std::string& token, int lineno) {
  if (!token.empty() && token.front() == '[') {
    if (token.back() != ']')
      throw config_error("line " + std::to_string(lineno) +
                         ": unterminated array");
    ConfigValue v;
    v.kind = ConfigValue::Kind::Array;
    const std::string body = trim(token.substr(1, token.size() - 2));
    if (body.empty()) return v;
    // split on commas outside quotes
    std::string cur;
    bool quoted = false;
    for (char ch : body) {
      if (ch == '"') quoted = !quoted;
      if (ch == ',' && !quoted) {
        v.array.push_back(parse_scalar(trim(cur), lineno));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    v.array.push_back(parse_scalar(trim(cur), lineno));
    return v;
  }
  return parse_scalar(token, lineno);
}

}  // namespace

ConfigTable parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config '" + path + "'");
  ConfigTable table;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(strip_comment(line));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']')
        throw config_error("line " + std::to_string(lineno) +
                           ": malformed section header");
      section = trim(text.substr(1, text.size() - 2));
      if (section.empty())
        throw config_error("line " + std::to_string(lineno) +
                           ": empty section name");
      table[section];
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) +
                         ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    if (key.empty() || section.empty())
      throw config_error("line " + std::to_string(lineno) +
                         ": key outside a section");
    table[section][key] = parse_value(trim(text.substr(eq + 1)), lineno);
  }
  return table;
}

namespace {

const ConfigValue* find(const ConfigTable& t, const std::string& section,
                        const std::string& key) {
  const auto s = t.find(section);
  if (s == t.end()) return nullptr;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  return &k->second;
}

std::string want_string(const ConfigValue& v, const std::string& where) {
  if (v.kind != ConfigValue::Kind::String)
    throw config_error(where + " must be a string");
  return v.str;
}

double want_number(const ConfigValue& v, const std::string& where) {
  if (v.kind != ConfigValue::Kind::Number)
    throw config_error(where + " must be a number");
  return v.num;
}

std::vector<std::string> want_string_array(const ConfigValue& v,
                                           const std::string& where) {
  if (v.kind != ConfigValue::Kind::Array)
    throw config_error(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v.array) out.push_back(want_string(e, where));
  return out;
}

std::vector<double> want_number_array(const ConfigValue& v,
                                      const std::string& where) {
  if (v.kind != ConfigValue::Kind::Array)
    throw config_error(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v.array) out.push_back(want_number(e, where));
  return out;
}

long want_integer(const ConfigValue& v, const std::string& where) {
  const double d = want_number(v, where);
  const long l = static_cast<long>(d);
  if (static_cast<double>(l) != d)
    throw config_error(where + " must be an integer");
  return l;
}

void check_known_keys(const ConfigTable& table) {
  static const std::map<std::string, std::set<std::string>> known = {
      {"dataset",
       {"path", "response", "fixed", "random", "categorical_fixed",
        "level_order"}},
      {"prior", {"mu0", "Q_scale", "Q_diag", "a", "b"}},
      {"run", {"samplers", "iterations", "burn_in", "thin", "seed"}},
      {"diagnostics", {"max_lag", "groups"}},
      {"output", {"dir"}},
  };
  for (const auto& sec : table) {
    const auto it = known.find(sec.first);
    if (it == known.end())
      throw config_error("unknown section [" + sec.first + "]");
    for (const auto& kv : sec.second)
      if (it->second.count(kv.first) == 0)
        throw config_error("unknown key '" + kv.first + "' in [" + sec.first +
                           "]");
  }
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  const ConfigTable table = parse_config_file(path);
  check_known_keys(table);
  ExperimentConfig cfg;

  const ConfigValue* v;
  if (!(v = find(table, "dataset", "path")))
    throw config_error("[dataset] path is required");
  cfg.dataset.path = want_string(*v, "dataset.path");
  if (!(v = find(table, "dataset", "response")))
    throw config_error("[dataset] response is required");
  cfg.dataset.response = want_string(*v, "dataset.response");
  if ((v = find(table, "dataset", "fixed")))
    cfg.dataset.fixed = want_string_array(*v, "dataset.fixed");
  if (!(v = find(table, "dataset", "random")))
    throw config_error("[dataset] random is required");
  cfg.dataset.random_effects = want_string_array(*v, "dataset.random");
  if ((v = find(table, "dataset", "categorical_fixed")))
    cfg.dataset.categorical_fixed =
        want_string_array(*v, "dataset.categorical_fixed");
  if ((v = find(table, "dataset", "level_order"))) {
    const std::string order = want_string(*v, "dataset.level_order");
    if (order == "lexicographic")
      cfg.dataset.level_order = LevelOrder::Lexicographic;
    else if (order == "appearance")
      cfg.dataset.level_order = LevelOrder::FirstAppearance;
    else
      throw config_error(
          "dataset.level_order must be 'lexicographic' or 'appearance'");
  }

  if ((v = find(table, "prior", "mu0")))
    cfg.mu0 = want_number_array(*v, "prior.mu0");
  if ((v = find(table, "prior", "Q_scale")))
    cfg.q_scale = want_number(*v, "prior.Q_scale");
  if ((v = find(table, "prior", "Q_diag")))
    cfg.q_diag = want_number_array(*v, "prior.Q_diag");
  if (!(v = find(table, "prior", "a")))
    throw config_error("[prior] a is required");
  cfg.a = want_number_array(*v, "prior.a");
  if (!(v = find(table, "prior", "b")))
    throw config_error("[prior] b is required");
  cfg.b = want_number_array(*v, "prior.b");

  if ((v = find(table, "run", "samplers"))) {
    for (const std::string& name :
         want_string_array(*v, "run.samplers")) {
      if (name == "FG")
        cfg.samplers.push_back(SamplerKind::FullGibbs);
      else if (name == "BG")
        cfg.samplers.push_back(SamplerKind::BlockGibbs);
      else
        throw config_error("run.samplers entries must be 'FG' or 'BG'");
    }
  } else {
    cfg.samplers = {SamplerKind::BlockGibbs, SamplerKind::FullGibbs};
  }
  if (cfg.samplers.empty())
    throw config_error("run.samplers must select at least one sampler");
  if (!(v = find(table, "run", "iterations")))
    throw config_error("[run] iterations is required");
  cfg.iterations = want_integer(*v, "run.iterations");
  if ((v = find(table, "run", "burn_in")))
    cfg.burn_in = want_integer(*v, "run.burn_in");
  if ((v = find(table, "run", "thin")))
    cfg.thin = want_integer(*v, "run.thin");
  if ((v = find(table, "run", "seed"))) {
    if (v->kind != ConfigValue::Kind::Number)
      throw config_error("run.seed must be a number");
    char* end = nullptr;
    cfg.seed = std::strtoull(v->raw.c_str(), &end, 10);
    if (end == nullptr || *end != '\0')
      throw config_error("run.seed must be a nonnegative integer");
  }

  if ((v = find(table, "diagnostics", "max_lag")))
    cfg.max_lag = static_cast<int>(want_integer(*v, "diagnostics.max_lag"));
  if ((v = find(table, "diagnostics", "groups")))
    cfg.groups = want_string_array(*v, "diagnostics.groups");
  else
    cfg.groups = {"beta", "beta_tau1"};

  if ((v = find(table, "output", "dir")))
    cfg.out_dir = want_string(*v, "output.dir");
  return cfg;
}

void apply_prior(const ExperimentConfig& config, ModelSpec& spec) {
  const int p = spec.p();
  const int r = spec.r();
  PriorSpec prior;
  if (config.mu0.empty()) {
    prior.mu0 = Vector::Zero(p);
  } else {
    if (static_cast<int>(config.mu0.size()) != p)
      throw config_error("prior.mu0 has " + std::to_string(config.mu0.size()) +
                         " entries; design has p = " + std::to_string(p));
    prior.mu0 = Eigen::Map<const Vector>(config.mu0.data(), p);
  }
  if (!config.q_diag.empty()) {
    if (static_cast<int>(config.q_diag.size()) != p)
      throw config_error("prior.Q_diag length must equal p");
    prior.Q = Matrix::Zero(p, p);
    for (int i = 0; i < p; ++i) prior.Q(i, i) = config.q_diag[static_cast<std::size_t>(i)];
  } else {
    prior.Q = config.q_scale * Matrix::Identity(p, p);
  }
  if (static_cast<int>(config.a.size()) != r)
    throw config_error("prior.a has " + std::to_string(config.a.size()) +
                       " entries; model has r = " + std::to_string(r) +
                       " blocks");
  if (static_cast<int>(config.b.size()) != r)
    throw config_error("prior.b has " + std::to_string(config.b.size()) +
                       " entries; model has r = " + std::to_string(r) +
                       " blocks");
  prior.a = Eigen::Map<const Vector>(config.a.data(), r);
  prior.b_rate = Eigen::Map<const Vector>(config.b.data(), r);
  spec.prior = std::move(prior);
}

}  // namespace pgmix
