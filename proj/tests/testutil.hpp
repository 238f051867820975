#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sqlsynth/corpus.hpp"
#include "sqlsynth/rng.hpp"

namespace testutil {

struct ColumnSpec {
  std::string name;
  std::vector<std::string> cells;
};

inline sqlsynth::TableSchema make_table(std::string id, std::string name,
                                        std::vector<ColumnSpec> columns) {
  sqlsynth::TableSchema table;
  table.table_id = std::move(id);
  table.name = std::move(name);
  const std::size_t rows = columns.empty() ? 0 : columns.front().cells.size();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    table.columns.push_back({columns[c].name, sqlsynth::ColType::kText,
                             static_cast<int>(c)});
  }
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> row;
    for (const ColumnSpec& col : columns) row.push_back(col.cells.at(r));
    table.rows.push_back(std::move(row));
  }
  return sqlsynth::infer_column_types(std::move(table));
}

// The worked example table: a "performance" table whose locations column
// groups repeat so GROUP BY / HAVING COUNT patterns have something to count.
inline sqlsynth::TableSchema performance_table() {
  return make_table(
      "perf1", "performance",
      {{"locations", {"Hartford", "Hartford", "Boston", "Bridgeport", "Boston",
                      "Hartford"}},
       {"wins", {"2", "4", "1", "3", "5", "2"}},
       {"year", {"2001", "2002", "2003", "2004", "2005", "2006"}},
       {"event", {"Open", "Classic", "Open", "Masters", "Classic", "Open"}}});
}

// Deterministic synthetic corpus: 4-7 uniquely named columns per table with
// at least two numeric and one text column, 6-20 rows.
inline sqlsynth::TableCorpus fixture_corpus(std::size_t n_tables, std::uint64_t seed) {
  using sqlsynth::Rng;
  static const std::vector<std::string> numeric_names = {
      "wins", "year", "score", "points", "rank", "losses", "attendance", "laps"};
  static const std::vector<std::string> text_names = {
      "city", "team", "name", "country", "event", "coach", "first name",
      "home town", "league", "status"};
  static const std::vector<std::string> words = {
      "Bangkok", "Paris",  "London", "Tokyo",  "Alpha",   "Beta",
      "Gamma",   "Delta",  "Red",    "Blue",   "Hartford", "Boston",
      "Oslo",    "Madrid", "Cairo",  "Sydney"};
  static const std::vector<std::string> table_names = {
      "performance", "matches", "players", "albums", "cities", "seasons"};

  std::vector<sqlsynth::TableSchema> tables;
  for (std::size_t i = 0; i < n_tables; ++i) {
    Rng rng(sqlsynth::derive_seed(seed, i));
    const std::size_t n_numeric = 2 + rng.below(3);            // 2-4
    const std::size_t n_text = 2 + rng.below(3);               // 2-4
    const std::size_t n_rows = 6 + rng.below(15);              // 6-20

    std::vector<ColumnSpec> columns;
    std::vector<std::string> numeric_pool = numeric_names;
    std::vector<std::string> text_pool = text_names;
    rng.shuffle(numeric_pool);
    rng.shuffle(text_pool);
    for (std::size_t c = 0; c < n_text; ++c) {
      ColumnSpec spec{text_pool[c], {}};
      for (std::size_t r = 0; r < n_rows; ++r) {
        spec.cells.push_back(words[rng.below(words.size())]);
      }
      columns.push_back(std::move(spec));
    }
    for (std::size_t c = 0; c < n_numeric; ++c) {
      ColumnSpec spec{numeric_pool[c], {}};
      for (std::size_t r = 0; r < n_rows; ++r) {
        spec.cells.push_back(std::to_string(rng.below(500)));
      }
      columns.push_back(std::move(spec));
    }
    rng.shuffle(columns);

    sqlsynth::TableSchema table = make_table(
        "t" + std::to_string(i),
        table_names[rng.below(table_names.size())] + "_" + std::to_string(i),
        std::move(columns));
    table.source = "fixture";
    tables.push_back(std::move(table));
  }
  return sqlsynth::TableCorpus(std::move(tables));
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    const auto base = std::filesystem::temp_directory_path();
    std::random_device rd;
    path_ = base / ("sqlsynth_test_" + std::to_string(rd()) + "_" +
                    std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace testutil
