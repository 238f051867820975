#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sqlsynth/corpus.hpp"
#include "sqlsynth/example.hpp"
#include "sqlsynth/grammar.hpp"
#include "sqlsynth/labeler.hpp"
#include "sqlsynth/rng.hpp"

namespace sqlsynth {

struct BindFailure {
  std::string reason;
};

// Samples a complete, type-correct binding for one rule against one table:
// distinct columns for distinct COLUMN slots (numeric columns where the rule
// requires them), AGG/OP/SC terminals uniform over lexicon-backed candidates
// compatible with the bound column type (arithmetic comparisons only on
// NUMBER columns; OP slots never realize LIKE/BETWEEN/IN), condition values
// uniform over the grounding column's distinct non-empty cells, COUNT/LIMIT
// thresholds as small integers in [1, 5], LIKE patterns as a sampled cell
// wrapped with %. Returns BindFailure when the table cannot satisfy the rule
// (caller retries with another table).
std::optional<Binding> bind_rule(const ProductionRule& rule, const TableSchema& table,
                                 const TerminalLexicon& lexicon, Rng& rng,
                                 BindFailure* failure = nullptr);

// Joins the template's literal words and the binding's surface forms with
// single spaces. Throws UnboundSlotError when the binding misses a slot.
std::string render_question(const NlTemplate& nl, const Binding& binding);

struct GenerateOptions {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  int retry_budget = 50;  // table draws per requested example
};

struct GenerateResult {
  std::vector<SynthExample> examples;
  bool complete = true;
  std::string diagnostics;  // rule/table eligibility report when incomplete
};

// Generates exactly options.count labeled examples (or an incomplete result
// when some index exhausts its retry budget). Example i draws all randomness
// from a stream derived from (seed, i), so output is byte-identical for any
// worker count and any split of the index range.
GenerateResult generate(const Grammar& grammar, const TableCorpus& corpus,
                        const GenerateOptions& options);

// One SynthExample per line:
//   {"id","question","sql","table_id","rule_id","binding":{...},"labels":{...}}
void write_examples_jsonl(const std::filesystem::path& path,
                          const std::vector<SynthExample>& examples);
std::vector<SynthExample> read_examples_jsonl(const std::filesystem::path& path);

}  // namespace sqlsynth
