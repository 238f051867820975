#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sqlsynth/ast.hpp"
#include "sqlsynth/rng.hpp"

namespace sqlsynth {

class GrammarError : public Error {
 public:
  GrammarError(const std::string& rule_id, const std::string& message)
      : Error(rule_id.empty() ? message : "rule " + rule_id + ": " + message),
        rule_id_(rule_id) {}
  const std::string& rule_id() const { return rule_id_; }

 private:
  std::string rule_id_;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

// A lexicon key: one SQL terminal an AGG/OP/SC slot can realize.
using Terminal = std::variant<AggFn, CompareOp, SortDir>;

std::string terminal_token(const Terminal& t);
std::optional<Terminal> terminal_from_token(std::string_view token);

class TerminalLexicon {
 public:
  void add(const Terminal& terminal, std::vector<std::string> phrases);
  bool has(const Terminal& terminal) const;
  const std::vector<std::string>* find(const Terminal& terminal) const;
  const std::map<Terminal, std::vector<std::string>>& entries() const { return entries_; }

 private:
  std::map<Terminal, std::vector<std::string>> entries_;
};

// Uniformly samples one NL phrase for a terminal. Throws LexiconError when
// the terminal has no entry.
std::string realize_phrase(const Terminal& terminal, const TerminalLexicon& lexicon,
                           Rng& rng);

// The stock phrase table covering every aggregate, comparison, and sort
// direction; used by rule stubs so a mined grammar loads once its nl lines
// are authored.
TerminalLexicon default_lexicon();

// One natural-language template: literal words interleaved with slots.
struct NlTemplate {
  using Token = std::variant<std::string, SlotName>;
  std::vector<Token> tokens;

  std::string str() const;  // tokens joined by single spaces
};

struct ProductionRule {
  std::string rule_id;
  std::vector<NlTemplate> nl;  // >= 1 variant
  Query sql;                   // TEMPLATE mode
  std::string sql_text;        // canonical rendering of sql
  double weight = 1.0;

  // Derived at load; never hand-set.
  int min_columns = 0;
  std::set<SlotName> requires_numeric;  // COLUMN slots that must bind NUMBER
  bool multi_table = false;             // needs db grouping to bind
};

// Recomputes min_columns / requires_numeric / multi_table from rule.sql:
// min_columns counts distinct COLUMN slots; a COLUMN slot requires a numeric
// column when it appears under MAX/MIN/AVG/SUM (or an AGG slot, which can
// realize those) or on the left of a fixed arithmetic comparison
// (<, <=, >, >=, BETWEEN).
ProductionRule derive_constraints(ProductionRule rule);

// How a VALUE slot must be filled, derived from the condition (or LIMIT) it
// appears in. kCell / kLikePattern values are grounded in the cells of the
// column on the condition's left; COUNT(*)-threshold and LIMIT values are
// small integers rather than cell content.
struct ValueContext {
  enum class Kind { kCell, kLikePattern, kCountThreshold, kLimitCount };
  Kind kind = Kind::kCell;
  std::optional<SlotOr<std::string>> column;

  bool operator==(const ValueContext&) const = default;
};

// Throws GrammarError when one VALUE slot is reused in conflicting contexts
// (which would make value grounding ambiguous).
std::map<SlotName, ValueContext> value_slot_contexts(const Query& templ);

struct Grammar {
  std::vector<ProductionRule> rules;
  TerminalLexicon lexicon;

  const ProductionRule* find_rule(const std::string& rule_id) const;
};

// Parses and validates the sectioned grammar text format:
//
//   [lexicon]
//   MAX: maximum | the largest
//   >=: at least | no less than
//
//   [rule]
//   id: group_count
//   nl: For each COLUMN0 , return how many times TABLE0 with COLUMN1 OP0 VALUE0 ?
//   sql: SELECT COLUMN0 , COUNT ( * ) WHERE COLUMN1 OP0 VALUE0 GROUP BY COLUMN0
//   weight: 1
//
// '#' lines are comments; a rule may repeat nl: for question variants.
// Validation failures throw GrammarError naming the offending rule.
Grammar parse_grammar(std::string_view text);
Grammar load_grammar(const std::filesystem::path& path);

// Canonical re-serialization; parse_grammar(serialize_grammar(g)) reproduces
// g, and serialize ∘ parse is a fixed point on its own output.
std::string serialize_grammar(const Grammar& grammar);

}  // namespace sqlsynth
