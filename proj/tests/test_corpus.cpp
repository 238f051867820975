#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqlsynth/corpus.hpp"
#include "testutil.hpp"

using namespace sqlsynth;
using testutil::TempDir;
using testutil::make_table;
using testutil::write_file;

TEST_CASE("numeric cell recognition is locale independent") {
  CHECK(is_numeric_cell("1"));
  CHECK(is_numeric_cell("-3"));
  CHECK(is_numeric_cell("+5"));
  CHECK(is_numeric_cell("3.25"));
  CHECK(is_numeric_cell("-3.25"));
  CHECK(is_numeric_cell("1,234"));
  CHECK(is_numeric_cell("1,234,567.8"));
  CHECK_FALSE(is_numeric_cell(""));
  CHECK_FALSE(is_numeric_cell("12a"));
  CHECK_FALSE(is_numeric_cell("1,23"));
  CHECK_FALSE(is_numeric_cell("1234,567"));
  CHECK_FALSE(is_numeric_cell("1."));
  CHECK_FALSE(is_numeric_cell(".5"));
  CHECK_FALSE(is_numeric_cell("n/a"));
}

TEST_CASE("date cell recognition") {
  CHECK(is_date_cell("2004-07-21"));
  CHECK(is_date_cell("March 5, 2001"));
  CHECK(is_date_cell("december 25, 1999"));
  CHECK_FALSE(is_date_cell("2004-7-21"));
  CHECK_FALSE(is_date_cell("March 5 2001"));
  CHECK_FALSE(is_date_cell("Bangkok"));
  CHECK_FALSE(is_date_cell("1234"));
}

TEST_CASE("column typing applies the 80 percent rule") {
  const TableSchema table = make_table(
      "t", "t",
      {{"all_num", {"1", "2", "3", "4", "5"}},
       {"four_of_five", {"12", "n/a", "15", "20", "31"}},
       {"three_of_five", {"12", "n/a", "x", "20", "31"}},
       {"text", {"Bangkok", "Paris", "Rome", "Oslo", "Bern"}},
       {"dates", {"2004-07-21", "2005-01-02", "March 5, 2001", "2006-11-30",
                  "2007-02-14"}},
       {"empty_heavy", {"", "", "7", "", ""}}});
  CHECK(table.columns[0].col_type == ColType::kNumber);
  CHECK(table.columns[1].col_type == ColType::kNumber);  // exactly 80%
  CHECK(table.columns[2].col_type == ColType::kText);
  CHECK(table.columns[3].col_type == ColType::kText);
  CHECK(table.columns[4].col_type == ColType::kDate);
  // empty cells are excluded from the ratio: 1/1 numeric
  CHECK(table.columns[5].col_type == ColType::kNumber);
}

TEST_CASE("zero-row tables type as TEXT") {
  const TableSchema table = make_table("t", "t", {{"a", {}}, {"b", {}}});
  CHECK(table.columns[0].col_type == ColType::kText);
  CHECK(table.columns[1].col_type == ColType::kText);
}

TEST_CASE("typing is a pure function of cell strings") {
  const TableSchema a = make_table("t", "t", {{"c", {"1,234", "5", "6"}}});
  const TableSchema b = infer_column_types(a);
  CHECK(a.columns[0].col_type == b.columns[0].col_type);
  CHECK(b.columns[0].col_type == ColType::kNumber);
}

TEST_CASE("header dedup keeps the first of each ordered header tuple") {
  std::vector<TableSchema> tables;
  tables.push_back(make_table("t1", "first", {{"year", {"1"}}, {"event", {"a"}},
                                              {"city", {"b"}}}));
  tables.push_back(make_table("t2", "second", {{"Year ", {"2"}}, {"EVENT", {"c"}},
                                               {"city", {"d"}}}));
  tables.push_back(make_table("t3", "swapped", {{"event", {"e"}}, {"year", {"3"}},
                                                {"city", {"f"}}}));
  const std::vector<TableSchema> out = dedup_by_headers(tables);
  REQUIRE(out.size() == 2);
  CHECK(out[0].table_id == "t1");  // t2 normalizes to the same tuple
  CHECK(out[1].table_id == "t3");  // column order matters
}

TEST_CASE("dedup is idempotent and order preserving") {
  std::vector<TableSchema> tables;
  // 60 distinct header tuples, then 40 more reusing the first 40 tuples
  for (int i = 0; i < 60; ++i) {
    tables.push_back(make_table("d" + std::to_string(i), "d",
                                {{"k" + std::to_string(i), {"1"}}, {"v", {"2"}}}));
  }
  for (int i = 0; i < 40; ++i) {
    tables.push_back(make_table("dup" + std::to_string(i), "d",
                                {{"k" + std::to_string(i), {"9"}}, {"v", {"8"}}}));
  }
  REQUIRE(tables.size() == 100);
  const std::vector<TableSchema> once = dedup_by_headers(tables);
  CHECK(once.size() == 60);
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(once[i].table_id == "d" + std::to_string(i));
  }
  const std::vector<TableSchema> twice = dedup_by_headers(once);
  CHECK(twice == once);
}

TEST_CASE("jsonl corpus loading skips malformed entries") {
  TempDir tmp;
  const auto path = tmp.file("tables.jsonl");
  write_file(path,
             R"({"id":"t1","name":"alpha","header":["a","b"],"rows":[["1","x"],["2","y"]]})"
             "\n"
             R"({"id":"t2","name":"beta","header":["a"],"rows":[["1","too","wide"]]})"
             "\n"
             R"({"id":"t3","name":"gamma","header":["c","d"],"rows":[["7","z"]]})"
             "\n");
  const LoadResult result = load_corpus(path, CorpusFormat::kJsonlTables);
  REQUIRE(result.tables.size() == 2);
  CHECK(result.tables[0].table_id == "t1");
  CHECK(result.tables[1].table_id == "t3");
  REQUIRE(result.skipped.size() == 1);
  CHECK(result.skipped[0].line == 2);
  CHECK(result.skipped[0].reason.find("ragged") != std::string::npos);
  // rectangularity holds for everything that loaded
  for (const TableSchema& table : result.tables) {
    for (const auto& row : table.rows) CHECK(row.size() == table.columns.size());
  }
}

TEST_CASE("jsonl loader derives stable ids and rejects duplicates") {
  TempDir tmp;
  const auto path = tmp.file("corpus.jsonl");
  write_file(path,
             R"({"header":["a"],"rows":[["1"]]})" "\n"
             R"({"id":"x","header":["b"],"rows":[["2"]]})" "\n"
             R"({"id":"x","header":["c"],"rows":[["3"]]})" "\n"
             "not json\n"
             R"({"id":"t","header":[],"rows":[]})" "\n");
  const LoadResult result = load_corpus(path, CorpusFormat::kJsonlTables);
  REQUIRE(result.tables.size() == 2);
  CHECK(result.tables[0].table_id == "corpus:1");
  CHECK(result.tables[0].name == "corpus:1");
  CHECK(result.tables[1].table_id == "x");
  REQUIRE(result.skipped.size() == 3);  // duplicate id, bad json, empty header

  // identical bytes load identically
  const LoadResult again = load_corpus(path, CorpusFormat::kJsonlTables);
  CHECK(again.tables == result.tables);
}

TEST_CASE("csv directory loading") {
  TempDir tmp;
  write_file(tmp.file("beta.csv"), "a,b\n1,\"x,y\"\n2,\"with \"\"quotes\"\"\"\n");
  write_file(tmp.file("alpha.csv"), "name,wins\nOslo,3\nBern,5\n");
  write_file(tmp.file("gamma.csv"), "h1,h2\nonly,\n");
  write_file(tmp.file("notes.txt"), "ignored\n");
  const LoadResult result = load_corpus(tmp.path(), CorpusFormat::kCsvDir);
  REQUIRE(result.tables.size() == 3);
  CHECK(result.tables[0].table_id == "alpha");  // sorted by filename
  CHECK(result.tables[0].name == "alpha");
  CHECK(result.tables[0].columns[1].col_type == ColType::kNumber);
  CHECK(result.tables[1].rows[0][1] == "x,y");
  CHECK(result.tables[1].rows[1][1] == "with \"quotes\"");
  CHECK(result.skipped.empty());
}

TEST_CASE("empty csv directory loads nothing without skips") {
  TempDir tmp;
  const LoadResult result = load_corpus(tmp.path(), CorpusFormat::kCsvDir);
  CHECK(result.tables.empty());
  CHECK(result.skipped.empty());
}

TEST_CASE("missing paths are fatal") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/path.jsonl", CorpusFormat::kJsonlTables),
                  Error);
}

TEST_CASE("utterance loading resolves table references") {
  TempDir tmp;
  const auto tables_path = tmp.file("tables.jsonl");
  write_file(tables_path,
             R"({"id":"t1","name":"alpha","header":["a"],"rows":[["1"]]})" "\n"
             R"({"id":"t2","name":"beta","header":["b"],"rows":[["2"]]})" "\n");
  const TableCorpus corpus(load_corpus(tables_path, CorpusFormat::kJsonlTables).tables);

  const auto utt_path = tmp.file("utterances.jsonl");
  write_file(utt_path,
             R"({"text":"how many rows","table_id":"t1","source":"s1"})" "\n"
             R"({"text":"missing table","table_id":"t9","source":"s1"})" "\n"
             R"({"text":"  ","table_id":"t1","source":"s1"})" "\n"
             R"({"text":"spans both","table_id":["t1","t2"],"source":"s2"})" "\n");
  const UtteranceLoadResult result = load_utterances(utt_path, corpus);
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0].table_indices == std::vector<std::size_t>{0});
  CHECK(result.records[1].table_indices == std::vector<std::size_t>{0, 1});
  CHECK(result.skipped.size() == 2);
}

TEST_CASE("column resolution normalizes names and keeps first occurrence") {
  const TableSchema table = make_table(
      "t", "t", {{"Home Town", {"x"}}, {"wins", {"1"}}, {"HOME  town", {"y"}}});
  CHECK(resolve_column(table, "home town") == 0);
  CHECK(resolve_column(table, "Home Town") == 0);
  CHECK(resolve_column(table, "WINS") == 1);
  CHECK_FALSE(resolve_column(table, "losses").has_value());
}

TEST_CASE("skip report is written as jsonl") {
  TempDir tmp;
  const auto path = tmp.file("skips.jsonl");
  write_skip_report(path, {{"f.jsonl", 3, "bad"}, {"g.csv", 0, "empty"}});
  const std::string content = testutil::read_file(path);
  CHECK(content ==
        "{\"path\":\"f.jsonl\",\"line\":3,\"reason\":\"bad\"}\n"
        "{\"path\":\"g.csv\",\"line\":0,\"reason\":\"empty\"}\n");
}
