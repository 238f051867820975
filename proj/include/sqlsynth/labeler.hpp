#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqlsynth/ast.hpp"
#include "sqlsynth/corpus.hpp"
#include "sqlsynth/example.hpp"

namespace sqlsynth {

class LabelError : public Error {
 public:
  using Error::Error;
};

class VocabError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::string_view kNoneLabel = "NONE";

// Per-column operation-class labels for a concrete in-dialect query.
//
// Every schema column gets exactly one label; columns absent from the query
// get "NONE". A label joins clause-role atoms with " AND ", ordered by
// context (main query, then its subquery, then the set-op arm, then the
// arm's subquery) and within a context by clause order (SELECT, FROM, WHERE,
// GROUP BY, HAVING, ORDER BY, LIMIT). "GROUP BY HAVING" is a single atom for
// a grouped column when the query filters groups; a column referenced inside
// the HAVING predicate itself gets a separate "HAVING" atom. "ORDER BY
// LIMIT" likewise fuses when the query carries a LIMIT. Columns inside a
// set-op arm are prefixed with the arm kind, columns inside a scalar
// subquery with "SUB".
//
// Throws LabelError when a column reference does not resolve against the
// schema (or the query joins tables, which a single schema cannot resolve).
std::map<int, std::string> label_columns(const Query& sql, const TableSchema& schema);

// The labels a rule template implies once its COLUMN slots are bound:
// the synthesis-time ground truth. Concrete column names in the template are
// resolved against the schema directly.
std::map<int, std::string> labels_from_template(const Query& templ,
                                                const Binding& binding,
                                                const TableSchema& schema);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> diffs;  // "column 2 (wins): expected WHERE, got NONE"
};

// Checks that the example's stored labels match both label routes: the
// labels recomputed from its SQL string and the labels implied by the rule
// template plus binding.
VerifyResult verify_against_binding(const SynthExample& example,
                                    const Query& rule_template,
                                    const TableSchema& schema);

class LabelVocabulary {
 public:
  LabelVocabulary();  // just NONE

  // Sorted distinct labels with NONE first; stable across input order.
  static LabelVocabulary from_labels(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  std::optional<int> find(const std::string& label) const;
  int index_of(const std::string& label) const;  // throws VocabError
  const std::string& provenance() const { return provenance_; }

  // One label per line; line number (0-based) is the class index.
  void write(const std::filesystem::path& path) const;
  static LabelVocabulary read(const std::filesystem::path& path);

 private:
  std::vector<std::string> labels_;
  std::map<std::string, int> index_;
  std::string provenance_;

  void rebuild_index();
};

LabelVocabulary build_vocabulary(const std::vector<SynthExample>& examples);

}  // namespace sqlsynth
