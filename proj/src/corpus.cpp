#include "sqlsynth/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sqlsynth {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view col_type_name(ColType type) {
  switch (type) {
    case ColType::kNumber: return "NUMBER";
    case ColType::kText: return "TEXT";
    case ColType::kDate: return "DATE";
  }
  return "";
}

std::string normalize_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_space = false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool is_numeric_cell(std::string_view cell) {
  if (cell.empty()) return false;
  std::size_t i = 0;
  if (cell[i] == '-' || cell[i] == '+') ++i;
  if (i >= cell.size()) return false;

  // integer part, optionally with 3-digit grouping
  std::size_t group_start = i;
  while (i < cell.size() && std::isdigit(static_cast<unsigned char>(cell[i]))) ++i;
  const std::size_t first_group = i - group_start;
  if (first_group == 0) return false;
  if (i < cell.size() && cell[i] == ',') {
    if (first_group > 3) return false;
    while (i < cell.size() && cell[i] == ',') {
      ++i;
      std::size_t digits = 0;
      while (i < cell.size() && std::isdigit(static_cast<unsigned char>(cell[i]))) {
        ++i;
        ++digits;
      }
      if (digits != 3) return false;
    }
  }
  if (i == cell.size()) return true;
  if (cell[i] != '.') return false;
  ++i;
  std::size_t frac = 0;
  while (i < cell.size() && std::isdigit(static_cast<unsigned char>(cell[i]))) {
    ++i;
    ++frac;
  }
  return frac > 0 && i == cell.size();
}

namespace {

bool is_month_word(std::string_view word) {
  static const char* months[] = {"january", "february", "march",     "april",
                                 "may",     "june",     "july",      "august",
                                 "september", "october", "november", "december"};
  std::string lower;
  for (char c : word) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (const char* m : months) {
    if (lower == m) return true;
  }
  return false;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

}  // namespace

bool is_date_cell(std::string_view cell) {
  // ISO-like: YYYY-MM-DD
  if (cell.size() == 10 && cell[4] == '-' && cell[7] == '-' &&
      all_digits(cell.substr(0, 4)) && all_digits(cell.substr(5, 2)) &&
      all_digits(cell.substr(8, 2))) {
    return true;
  }
  // "Month DD, YYYY"
  const std::size_t sp = cell.find(' ');
  if (sp == std::string_view::npos) return false;
  if (!is_month_word(cell.substr(0, sp))) return false;
  std::string_view rest = cell.substr(sp + 1);
  const std::size_t comma = rest.find(", ");
  if (comma == std::string_view::npos) return false;
  std::string_view day = rest.substr(0, comma);
  std::string_view year = rest.substr(comma + 2);
  return all_digits(day) && day.size() <= 2 && all_digits(year) && year.size() == 4;
}

TableSchema infer_column_types(TableSchema table) {
  for (ColumnMeta& col : table.columns) {
    std::size_t non_empty = 0;
    std::size_t numeric = 0;
    std::size_t dates = 0;
    for (const auto& row : table.rows) {
      const std::string& cell = row[static_cast<std::size_t>(col.index)];
      if (normalize_name(cell).empty()) continue;
      ++non_empty;
      if (is_numeric_cell(cell)) ++numeric;
      if (is_date_cell(cell)) ++dates;
    }
    if (non_empty == 0) {
      col.col_type = ColType::kText;
    } else if (numeric * 100 >= non_empty * 80) {
      col.col_type = ColType::kNumber;
    } else if (dates * 100 >= non_empty * 80) {
      col.col_type = ColType::kDate;
    } else {
      col.col_type = ColType::kText;
    }
  }
  return table;
}

std::vector<TableSchema> dedup_by_headers(std::vector<TableSchema> tables) {
  std::set<std::vector<std::string>> seen;
  std::vector<TableSchema> out;
  out.reserve(tables.size());
  for (TableSchema& table : tables) {
    std::vector<std::string> key;
    key.reserve(table.columns.size());
    for (const ColumnMeta& col : table.columns) key.push_back(normalize_name(col.name));
    if (seen.insert(std::move(key)).second) out.push_back(std::move(table));
  }
  return out;
}

namespace {

// Validates structure shared by both loaders; returns an error reason or
// empty on success.
std::string check_table(const TableSchema& table) {
  if (table.columns.empty()) return "table has no columns";
  for (const ColumnMeta& col : table.columns) {
    if (normalize_name(col.name).empty()) return "empty column name";
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.columns.size()) {
      return "ragged row " + std::to_string(r) + ": " +
             std::to_string(table.rows[r].size()) + " cells, expected " +
             std::to_string(table.columns.size());
    }
  }
  return "";
}

std::optional<TableSchema> table_from_json(const json& obj, std::string* reason) {
  if (!obj.is_object()) {
    *reason = "line is not a JSON object";
    return std::nullopt;
  }
  TableSchema table;
  try {
    table.table_id = obj.value("id", "");
    table.name = obj.value("name", "");
    const json& header = obj.at("header");
    int index = 0;
    for (const json& h : header) {
      table.columns.push_back({h.get<std::string>(), ColType::kText, index++});
    }
    for (const json& row : obj.at("rows")) {
      std::vector<std::string> cells;
      for (const json& cell : row) {
        if (cell.is_string()) {
          cells.push_back(cell.get<std::string>());
        } else if (cell.is_null()) {
          cells.emplace_back();
        } else {
          cells.push_back(cell.dump());
        }
      }
      table.rows.push_back(std::move(cells));
    }
  } catch (const json::exception& e) {
    *reason = e.what();
    return std::nullopt;
  }
  if (std::string err = check_table(table); !err.empty()) {
    *reason = err;
    return std::nullopt;
  }
  return table;
}

LoadResult load_jsonl_tables(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  LoadResult result;
  std::set<std::string> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string reason;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded()) {
      result.skipped.push_back({path.string(), line_no, "invalid JSON"});
      continue;
    }
    std::optional<TableSchema> table = table_from_json(obj, &reason);
    if (!table) {
      result.skipped.push_back({path.string(), line_no, reason});
      continue;
    }
    if (table->table_id.empty()) {
      table->table_id = path.stem().string() + ":" + std::to_string(line_no);
    }
    if (table->name.empty()) table->name = table->table_id;
    if (!ids.insert(table->table_id).second) {
      result.skipped.push_back({path.string(), line_no,
                                "duplicate table_id " + table->table_id});
      continue;
    }
    table->source = path.string();
    result.tables.push_back(infer_column_types(std::move(*table)));
  }
  return result;
}

// Minimal RFC-4180 style reader: quoted fields, embedded commas/newlines,
// doubled-quote escapes, optional trailing CR.
std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  char c;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        field_started = true;
        break;
    }
  }
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

LoadResult load_csv_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  LoadResult result;
  for (const fs::path& file : files) {
    std::ifstream in(file);
    if (!in) {
      result.skipped.push_back({file.string(), 0, "cannot open file"});
      continue;
    }
    auto records = parse_csv(in);
    if (records.empty()) {
      result.skipped.push_back({file.string(), 0, "empty file"});
      continue;
    }
    TableSchema table;
    table.table_id = file.stem().string();
    table.name = file.stem().string();
    table.source = file.string();
    int index = 0;
    for (std::string& h : records.front()) {
      table.columns.push_back({std::move(h), ColType::kText, index++});
    }
    table.rows.assign(std::make_move_iterator(records.begin() + 1),
                      std::make_move_iterator(records.end()));
    if (std::string err = check_table(table); !err.empty()) {
      result.skipped.push_back({file.string(), 0, err});
      continue;
    }
    result.tables.push_back(infer_column_types(std::move(table)));
  }
  return result;
}

}  // namespace

LoadResult load_corpus(const fs::path& path, CorpusFormat format) {
  if (!fs::exists(path)) throw Error("no such path: " + path.string());
  return format == CorpusFormat::kJsonlTables ? load_jsonl_tables(path)
                                              : load_csv_dir(path);
}

TableCorpus::TableCorpus(std::vector<TableSchema> tables) : tables_(std::move(tables)) {
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    by_id_.emplace(tables_[i].table_id, i);
  }
}

std::optional<std::size_t> TableCorpus::find(const std::string& table_id) const {
  auto it = by_id_.find(table_id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

UtteranceLoadResult load_utterances(const fs::path& path, const TableCorpus& corpus) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  UtteranceLoadResult result;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      result.skipped.push_back({path.string(), line_no, "invalid JSON"});
      continue;
    }
    UtteranceRecord record;
    record.text = obj.value("text", "");
    record.source = obj.value("source", "");
    if (normalize_name(record.text).empty()) {
      result.skipped.push_back({path.string(), line_no, "empty text"});
      continue;
    }
    std::vector<std::string> ids;
    const json table_id = obj.contains("table_id") ? obj["table_id"] : json();
    if (table_id.is_string()) {
      ids.push_back(table_id.get<std::string>());
    } else if (table_id.is_array()) {
      for (const json& id : table_id) {
        if (id.is_string()) ids.push_back(id.get<std::string>());
      }
    }
    if (ids.empty()) {
      result.skipped.push_back({path.string(), line_no, "missing table_id"});
      continue;
    }
    bool ok = true;
    for (const std::string& id : ids) {
      std::optional<std::size_t> idx = corpus.find(id);
      if (!idx) {
        result.skipped.push_back({path.string(), line_no, "unknown table_id " + id});
        ok = false;
        break;
      }
      record.table_indices.push_back(*idx);
    }
    if (!ok) continue;
    result.records.push_back(std::move(record));
  }
  return result;
}

std::optional<int> resolve_column(const TableSchema& table, std::string_view name) {
  const std::string key = normalize_name(name);
  for (const ColumnMeta& col : table.columns) {
    if (normalize_name(col.name) == key) return col.index;
  }
  return std::nullopt;
}

void write_skip_report(const fs::path& path, const std::vector<SkipRecord>& skipped) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const SkipRecord& skip : skipped) {
    nlohmann::ordered_json line = {
        {"path", skip.path}, {"line", skip.line}, {"reason", skip.reason}};
    out << line.dump() << '\n';
  }
}

}  // namespace sqlsynth
