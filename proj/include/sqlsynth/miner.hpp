#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sqlsynth/ast.hpp"
#include "sqlsynth/corpus.hpp"

namespace sqlsynth {

class AbstractionError : public Error {
 public:
  using Error::Error;
};

struct SeedPair {
  std::string question;
  std::string sql;       // concrete, in-dialect
  std::string table_id;
};

struct AbstractionResult {
  Query templ;            // TEMPLATE-mode AST
  SlotBindings binding;   // inverse map: slot -> the terminal it replaced
};

// Replaces terminals with slots, ordinals assigned by first textual
// occurrence with reuse for repeated terminals: table names -> TABLEi,
// column names -> COLUMNi, literals -> VALUEi, aggregate functions -> AGGi,
// single-valued comparison operators (including LIKE) -> OPi, sort
// directions -> SCi. BETWEEN / IN / NOT IN keep their keywords since slotting
// them would change condition arity. Identifiers that do not resolve against
// the schema throw AbstractionError.
AbstractionResult abstract_sql(const Query& concrete, const TableSchema& schema);

struct TemplateGroup {
  Query beta;
  std::string beta_text;           // canonical rendering, the grouping key
  int count = 0;
  std::vector<SeedPair> exemplars; // capped
};

struct MineResult {
  std::vector<TemplateGroup> groups;  // count desc, ties by template text asc
  std::vector<SkipRecord> skipped;    // out-of-dialect or unresolvable pairs
};

// Groups seed pairs by their abstracted template, counts group sizes, and
// keeps the top_k most frequent groups. group counts + skipped always
// partition the input.
MineResult mine_templates(const std::vector<SeedPair>& pairs, const TableCorpus& corpus,
                          int top_k, int exemplar_cap = 4);

// Seed pair JSONL: {"question","sql","table_id"} per line.
struct SeedLoadResult {
  std::vector<SeedPair> pairs;
  std::vector<SkipRecord> skipped;
};
SeedLoadResult load_seed_pairs(const std::filesystem::path& path);

// Writes a grammar-file skeleton: the default lexicon, then one [rule] block
// per group with sql: filled, exemplar questions as comments, and an empty
// nl: line for the author. The output only loads once the nl lines are
// written.
void emit_rule_stubs(const std::vector<TemplateGroup>& groups,
                     const std::filesystem::path& path);

}  // namespace sqlsynth
