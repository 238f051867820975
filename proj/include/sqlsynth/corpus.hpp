#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqlsynth/error.hpp"

namespace sqlsynth {

enum class ColType { kNumber, kText, kDate };

std::string_view col_type_name(ColType type);

struct ColumnMeta {
  std::string name;
  ColType col_type = ColType::kText;
  int index = 0;

  bool operator==(const ColumnMeta&) const = default;
};

struct TableSchema {
  std::string table_id;
  std::string name;
  std::vector<ColumnMeta> columns;
  std::vector<std::vector<std::string>> rows;  // row-major cell strings
  std::string source;

  bool operator==(const TableSchema&) const = default;
};

struct UtteranceRecord {
  std::string text;
  std::vector<std::size_t> table_indices;  // into the owning corpus; usually one
  std::string source;
};

struct SkipRecord {
  std::string path;
  int line = 0;  // 1-based line (JSONL) or 0 for file-level problems
  std::string reason;
};

enum class CorpusFormat { kJsonlTables, kCsvDir };

struct LoadResult {
  std::vector<TableSchema> tables;
  std::vector<SkipRecord> skipped;
};

// Lowercase, trim, collapse internal whitespace runs. Used for header dedup
// keys and for resolving SQL identifiers against schemas.
std::string normalize_name(std::string_view name);

// True when the cell parses as an integer or decimal, allowing well-formed
// thousands separators ("1,234,567.5"). Locale-independent.
bool is_numeric_cell(std::string_view cell);

// True for ISO-like dates (2004-07-21) and "Month DD, YYYY" forms.
bool is_date_cell(std::string_view cell);

// A column is NUMBER when >= 80% of its non-empty cells are numeric, DATE
// when >= 80% are dates, otherwise TEXT. Zero-row tables type as all TEXT.
// Pure function of the cell strings.
TableSchema infer_column_types(TableSchema table);

// Keeps the first table (in input order) of every group sharing the same
// normalized ordered header tuple; output preserves input order. Idempotent.
std::vector<TableSchema> dedup_by_headers(std::vector<TableSchema> tables);

// Loads tables from disk. JSONL_TABLES: one {"id","name","header","rows"}
// object per line. CSV_DIR: every *.csv in the directory, first row as
// header, file stem as table name/id. Column types are inferred on load.
// Malformed entries are skipped and reported, never fatal; a missing or
// unreadable path throws Error.
LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format);

// Indexed corpus: owns tables and resolves table_id references.
class TableCorpus {
 public:
  TableCorpus() = default;
  explicit TableCorpus(std::vector<TableSchema> tables);

  const std::vector<TableSchema>& tables() const { return tables_; }
  std::size_t size() const { return tables_.size(); }
  const TableSchema& at(std::size_t i) const { return tables_.at(i); }
  std::optional<std::size_t> find(const std::string& table_id) const;

 private:
  std::vector<TableSchema> tables_;
  std::map<std::string, std::size_t> by_id_;
};

struct UtteranceLoadResult {
  std::vector<UtteranceRecord> records;
  std::vector<SkipRecord> skipped;
};

// Loads utterance records: JSONL {"text","table_id","source"}. table_id may
// be a single id or an array of ids (multi-table database records). Records
// with empty text or unresolvable ids are skipped and reported.
UtteranceLoadResult load_utterances(const std::filesystem::path& path,
                                    const TableCorpus& corpus);

// Resolves a column identifier against a schema: normalized-name match,
// first occurrence wins. Returns column index.
std::optional<int> resolve_column(const TableSchema& table, std::string_view name);

void write_skip_report(const std::filesystem::path& path,
                       const std::vector<SkipRecord>& skipped);

}  // namespace sqlsynth
