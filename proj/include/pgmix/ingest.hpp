#ifndef PGMIX_INGEST_HPP
#define PGMIX_INGEST_HPP

#include <string>
#include <vector>

#include "pgmix/model.hpp"

namespace pgmix {

enum class LevelOrder { Lexicographic, FirstAppearance };

// A dataset on disk plus the recipe that turns it into a design:
//  - response: numeric column with values 0/1 only (no silent thresholding);
//  - fixed: numeric columns pass through, categorical columns expand into
//    L-1 indicators against the reference level (first under level_order);
//    an intercept column of ones is always prepended;
//  - random: each grouping column contributes L indicator columns to Z,
//    forming one block with q_j = L.
struct DatasetFile {
  std::string path;
  std::string response;
  std::vector<std::string> fixed;
  std::vector<std::string> random_effects;
  std::vector<std::string> categorical_fixed;  // force these fixed columns
  LevelOrder level_order = LevelOrder::Lexicographic;
};

// Parsed CSV with a header row; cells kept as strings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path, char delimiter = ',');

// Builds X, Z, y, blocks and coefficient names from the file. The prior in
// the returned spec is defaulted (flat, a = b = 0) and must be filled by the
// caller. Throws data_error with row/column context on unmappable responses,
// missing cells, or single-level categoricals.
ModelSpec ingest(const DatasetFile& dataset);

}  // namespace pgmix

#endif
