#include "sqlsynth/serializer.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sqlsynth {

namespace {

void append_words(std::vector<std::string>& tokens, const std::string& text) {
  std::istringstream in(text);
  std::string word;
  while (in >> word) tokens.push_back(word);
}

}  // namespace

FlatSequence flatten(const std::string& utterance,
                     std::span<const TableSchema* const> tables,
                     std::string_view separator) {
  FlatSequence seq;
  append_words(seq.tokens, utterance);
  const bool prefix_table_names = tables.size() > 1;
  for (const TableSchema* table : tables) {
    for (const ColumnMeta& col : table->columns) {
      seq.sep_positions.push_back(static_cast<int>(seq.tokens.size()));
      seq.tokens.emplace_back(separator);
      if (prefix_table_names) append_words(seq.tokens, table->name);
      append_words(seq.tokens, col.name);
      seq.column_order.push_back(col.index);
    }
  }
  return seq;
}

FlatSequence serialize_ssp(const SynthExample& example, const TableSchema& table,
                           const LabelVocabulary& vocab, std::string_view separator) {
  const TableSchema* tables[] = {&table};
  FlatSequence seq = flatten(example.question, tables, separator);
  seq.objective = Objective::kSsp;
  for (int column : seq.column_order) {
    const auto it = example.labels.find(column);
    const std::string label =
        it == example.labels.end() ? std::string(kNoneLabel) : it->second;
    seq.classes.push_back(vocab.index_of(label));
  }
  seq.meta["id"] = example.example_id;
  seq.meta["rule_id"] = example.rule_id;
  seq.meta["table_id"] = example.table_id;
  return seq;
}

FlatSequence serialize_mlm(const UtteranceRecord& record, const TableCorpus& corpus,
                           Rng& rng, const MaskPolicy& policy,
                           std::string_view separator) {
  std::vector<const TableSchema*> tables;
  std::string table_ids;
  for (std::size_t index : record.table_indices) {
    tables.push_back(&corpus.at(index));
    if (!table_ids.empty()) table_ids += ',';
    table_ids += corpus.at(index).table_id;
  }
  FlatSequence seq = flatten(record.text, tables, separator);
  seq.objective = Objective::kMlm;
  seq.policy = policy;
  std::size_t next_sep = 0;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (next_sep < seq.sep_positions.size() &&
        static_cast<int>(i) == seq.sep_positions[next_sep]) {
      ++next_sep;  // separators are never masked
      continue;
    }
    if (rng.bernoulli(policy.mask_prob)) {
      seq.mask_positions.push_back(static_cast<int>(i));
    }
  }
  seq.meta["table_id"] = table_ids;
  if (!record.source.empty()) seq.meta["source"] = record.source;
  return seq;
}

namespace {

using nlohmann::ordered_json;

ordered_json sequence_to_json(const FlatSequence& seq) {
  ordered_json line = ordered_json::object();
  line["objective"] = seq.objective == Objective::kSsp ? "SSP" : "MLM";
  line["tokens"] = seq.tokens;
  line["sep_positions"] = seq.sep_positions;
  if (seq.objective == Objective::kSsp) {
    line["classes"] = seq.classes;
  } else {
    line["mask_positions"] = seq.mask_positions;
  }
  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : seq.meta) meta[key] = value;
  if (seq.objective == Objective::kMlm) {
    meta["mask_policy"] = {{"mask_prob", seq.policy.mask_prob},
                           {"mask_token", seq.policy.mask_token_frac},
                           {"random", seq.policy.random_frac},
                           {"keep", seq.policy.keep_frac}};
  }
  line["meta"] = std::move(meta);
  return line;
}

}  // namespace

void write_dataset(const std::filesystem::path& path,
                   const std::vector<FlatSequence>& ssp,
                   const std::vector<FlatSequence>& mlm, std::uint64_t shuffle_seed) {
  std::vector<const FlatSequence*> order;
  order.reserve(ssp.size() + mlm.size());
  for (const FlatSequence& seq : ssp) order.push_back(&seq);
  for (const FlatSequence& seq : mlm) order.push_back(&seq);
  Rng rng(derive_seed(shuffle_seed, "shuffle"));
  rng.shuffle(order);

  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const FlatSequence* seq : order) {
    out << sequence_to_json(*seq).dump() << '\n';
  }
}

std::vector<FlatSequence> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<FlatSequence> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json obj = ordered_json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": invalid JSON");
    }
    FlatSequence seq;
    seq.objective = obj.value("objective", "SSP") == "SSP" ? Objective::kSsp
                                                           : Objective::kMlm;
    for (const auto& token : obj.at("tokens")) {
      seq.tokens.push_back(token.get<std::string>());
    }
    for (const auto& pos : obj.at("sep_positions")) {
      seq.sep_positions.push_back(pos.get<int>());
    }
    if (obj.contains("classes")) {
      for (const auto& c : obj["classes"]) seq.classes.push_back(c.get<int>());
    }
    if (obj.contains("mask_positions")) {
      for (const auto& m : obj["mask_positions"]) {
        seq.mask_positions.push_back(m.get<int>());
      }
    }
    if (obj.contains("meta")) {
      for (const auto& [key, value] : obj["meta"].items()) {
        if (value.is_string()) seq.meta[key] = value.get<std::string>();
        if (key == "mask_policy" && value.is_object()) {
          seq.policy.mask_prob = value.value("mask_prob", 0.15);
          seq.policy.mask_token_frac = value.value("mask_token", 0.8);
          seq.policy.random_frac = value.value("random", 0.1);
          seq.policy.keep_frac = value.value("keep", 0.1);
        }
      }
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace sqlsynth
