#include "pgmix/ingest.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
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

// One CSV record; supports double-quoted fields with embedded delimiters
// and doubled quotes.
std::vector<std::string> split_record(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delim) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end != nullptr && *end == '\0';
}

int column_index(const CsvTable& table, const std::string& name) {
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end())
    throw data_error("column '" + name + "' not found in header");
  return static_cast<int>(it - table.header.begin());
}

const std::string& cell(const CsvTable& table, int row, int col,
                        const std::string& colname) {
  const std::string& v = table.rows[static_cast<std::size_t>(row)]
                                  [static_cast<std::size_t>(col)];
  if (v.empty())
    throw data_error("missing cell at row " + std::to_string(row + 2) +
                     ", column '" + colname + "'");
  return v;
}

std::vector<std::string> level_set(const CsvTable& table, int col,
                                   const std::string& colname,
                                   LevelOrder order) {
  std::vector<std::string> levels;
  for (int i = 0; i < static_cast<int>(table.rows.size()); ++i) {
    const std::string& v = cell(table, i, col, colname);
    if (std::find(levels.begin(), levels.end(), v) == levels.end())
      levels.push_back(v);
  }
  if (order == LevelOrder::Lexicographic)
    std::sort(levels.begin(), levels.end());
  if (levels.size() < 2)
    throw data_error("column '" + colname +
                     "' has a single level; cannot be coded");
  return levels;
}

}  // namespace

CsvTable read_csv(const std::string& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw data_error("'" + path + "' is empty");
  table.header = split_record(line, delimiter);
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto rec = split_record(line, delimiter);
    if (rec.size() != table.header.size())
      throw data_error("row " + std::to_string(table.rows.size() + 2) +
                       " has " + std::to_string(rec.size()) +
                       " fields, header has " +
                       std::to_string(table.header.size()));
    table.rows.push_back(std::move(rec));
  }
  if (table.rows.empty()) throw data_error("'" + path + "' has no data rows");
  return table;
}

ModelSpec ingest(const DatasetFile& dataset) {
  const CsvTable table = read_csv(dataset.path);
  const int n = static_cast<int>(table.rows.size());

  // Response: numbers equal to 0 or 1 only.
  const int ycol = column_index(table, dataset.response);
  IntVector y(n);
  for (int i = 0; i < n; ++i) {
    const std::string& v = cell(table, i, ycol, dataset.response);
    double num;
    if (!parse_number(v, num) || (num != 0.0 && num != 1.0))
      throw data_error("response value '" + v + "' at row " +
                       std::to_string(i + 2) +
                       " is not 0 or 1 (derive the response upstream)");
    y[i] = static_cast<int>(num);
  }

  // Fixed effects: intercept, then declared columns in order.
  std::vector<Vector> xcols;
  std::vector<std::string> xnames;
  xcols.push_back(Vector::Ones(n));
  xnames.push_back("intercept");
  const std::set<std::string> forced(dataset.categorical_fixed.begin(),
                                     dataset.categorical_fixed.end());
  for (const std::string& name : dataset.fixed) {
    const int col = column_index(table, name);
    bool numeric = forced.count(name) == 0;
    std::vector<double> parsed(static_cast<std::size_t>(n));
    if (numeric) {
      for (int i = 0; i < n; ++i) {
        if (!parse_number(cell(table, i, col, name),
                          parsed[static_cast<std::size_t>(i)])) {
          numeric = false;
          break;
        }
      }
    }
    if (numeric) {
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = parsed[static_cast<std::size_t>(i)];
      xcols.push_back(std::move(x));
      xnames.push_back(name);
    } else {
      const auto levels = level_set(table, col, name, dataset.level_order);
      for (std::size_t l = 1; l < levels.size(); ++l) {  // reference = first
        Vector x = Vector::Zero(n);
        for (int i = 0; i < n; ++i)
          if (cell(table, i, col, name) == levels[l]) x[i] = 1.0;
        xcols.push_back(std::move(x));
        xnames.push_back(name + "=" + levels[l]);
      }
    }
  }

  // Random effects: one block of L indicators per grouping column.
  std::vector<Vector> zcols;
  std::vector<std::string> znames;
  std::vector<int> blocks;
  for (const std::string& name : dataset.random_effects) {
    const int col = column_index(table, name);
    const auto levels = level_set(table, col, name, dataset.level_order);
    for (const std::string& level : levels) {
      Vector z = Vector::Zero(n);
      for (int i = 0; i < n; ++i)
        if (cell(table, i, col, name) == level) z[i] = 1.0;
      zcols.push_back(std::move(z));
      znames.push_back(name + "=" + level);
    }
    blocks.push_back(static_cast<int>(levels.size()));
  }
  if (zcols.empty())
    throw data_error("at least one random-effect grouping column is required");

  ModelSpec spec;
  spec.X.resize(n, static_cast<long>(xcols.size()));
  for (std::size_t j = 0; j < xcols.size(); ++j)
    spec.X.col(static_cast<long>(j)) = xcols[j];
  spec.Z.resize(n, static_cast<long>(zcols.size()));
  for (std::size_t j = 0; j < zcols.size(); ++j)
    spec.Z.col(static_cast<long>(j)) = zcols[j];
  spec.y = y;
  spec.blocks = blocks;
  spec.coef_names = xnames;
  spec.coef_names.insert(spec.coef_names.end(), znames.begin(), znames.end());

  // Neutral prior scaffold; the caller supplies the real one.
  const int p = spec.p();
  const int r = spec.r();
  spec.prior.mu0 = Vector::Zero(p);
  spec.prior.Q = Matrix::Zero(p, p);
  spec.prior.a = Vector::Zero(r);
  spec.prior.b_rate = Vector::Zero(r);
  return spec;
}

}  // namespace pgmix
