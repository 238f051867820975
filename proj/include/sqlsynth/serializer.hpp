#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sqlsynth/corpus.hpp"
#include "sqlsynth/example.hpp"
#include "sqlsynth/labeler.hpp"
#include "sqlsynth/rng.hpp"

namespace sqlsynth {

inline constexpr std::string_view kDefaultSeparator = "</s>";

enum class Objective { kSsp, kMlm };

struct MaskPolicy {
  double mask_prob = 0.15;
  double mask_token_frac = 0.8;  // replaced with the mask token downstream
  double random_frac = 0.1;
  double keep_frac = 0.1;

  bool operator==(const MaskPolicy&) const = default;
};

struct FlatSequence {
  Objective objective = Objective::kSsp;
  std::vector<std::string> tokens;
  std::vector<int> sep_positions;   // index of the separator before each column
  std::vector<int> column_order;    // per-table column index at each separator
  std::vector<int> classes;         // SSP: one class index per separator
  std::vector<int> mask_positions;  // MLM: masked token indices
  MaskPolicy policy;                // MLM: recorded for auditability
  std::map<std::string, std::string> meta;
};

// The flat layout both objectives share: utterance tokens, then for each
// column a separator token followed by the column-name tokens. When the
// record spans more than one table, each column is prefixed with its table
// name. All tokens are whitespace-level; subword tokenization is downstream.
FlatSequence flatten(const std::string& utterance,
                     std::span<const TableSchema* const> tables,
                     std::string_view separator = kDefaultSeparator);

// SSP record: flat sequence plus the class index of each column's label.
// Throws VocabError when a label is outside the vocabulary.
FlatSequence serialize_ssp(const SynthExample& example, const TableSchema& table,
                           const LabelVocabulary& vocab,
                           std::string_view separator = kDefaultSeparator);

// MLM record: every non-separator token is masked independently with
// policy.mask_prob; deterministic under the rng seed.
FlatSequence serialize_mlm(const UtteranceRecord& record, const TableCorpus& corpus,
                           Rng& rng, const MaskPolicy& policy = MaskPolicy{},
                           std::string_view separator = kDefaultSeparator);

// Single interleaved JSONL, shuffled by shuffle_seed. Line schema:
//   {"objective":"SSP"|"MLM","tokens":[...],"sep_positions":[...],
//    "classes":[...] | "mask_positions":[...],"meta":{...}}
void write_dataset(const std::filesystem::path& path,
                   const std::vector<FlatSequence>& ssp,
                   const std::vector<FlatSequence>& mlm, std::uint64_t shuffle_seed);

std::vector<FlatSequence> read_dataset(const std::filesystem::path& path);

}  // namespace sqlsynth
