#include "sqlsynth/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sqlsynth/parser.hpp"
#include "sqlsynth/render.hpp"

namespace sqlsynth {

std::string terminal_token(const Terminal& t) {
  return std::visit([](auto v) { return std::string(to_sql(v)); }, t);
}

std::optional<Terminal> terminal_from_token(std::string_view token) {
  if (std::optional<AggFn> agg = agg_from_sql(token)) return Terminal{*agg};
  if (std::optional<CompareOp> op = op_from_sql(token)) return Terminal{*op};
  if (std::optional<SortDir> dir = dir_from_sql(token)) return Terminal{*dir};
  return std::nullopt;
}

void TerminalLexicon::add(const Terminal& terminal, std::vector<std::string> phrases) {
  entries_[terminal] = std::move(phrases);
}

bool TerminalLexicon::has(const Terminal& terminal) const {
  auto it = entries_.find(terminal);
  return it != entries_.end() && !it->second.empty();
}

const std::vector<std::string>* TerminalLexicon::find(const Terminal& terminal) const {
  auto it = entries_.find(terminal);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string realize_phrase(const Terminal& terminal, const TerminalLexicon& lexicon,
                           Rng& rng) {
  const std::vector<std::string>* phrases = lexicon.find(terminal);
  if (!phrases || phrases->empty()) {
    throw LexiconError("no phrases for terminal " + terminal_token(terminal));
  }
  return (*phrases)[rng.below(phrases->size())];
}

TerminalLexicon default_lexicon() {
  TerminalLexicon lexicon;
  lexicon.add(Terminal{AggFn::kMax}, {"maximum", "the largest", "the highest"});
  lexicon.add(Terminal{AggFn::kMin}, {"minimum", "the smallest", "the lowest"});
  lexicon.add(Terminal{AggFn::kCount}, {"number of", "how many"});
  lexicon.add(Terminal{AggFn::kAvg}, {"average", "mean"});
  lexicon.add(Terminal{AggFn::kSum}, {"total", "sum of"});
  lexicon.add(Terminal{CompareOp::kEq}, {"is", "equal to", "exactly"});
  lexicon.add(Terminal{CompareOp::kNe}, {"is not", "not equal to", "other than"});
  lexicon.add(Terminal{CompareOp::kLt}, {"less than", "below", "smaller than"});
  lexicon.add(Terminal{CompareOp::kLe}, {"no more than", "at most", "no above"});
  lexicon.add(Terminal{CompareOp::kGt}, {"more than", "greater than", "above"});
  lexicon.add(Terminal{CompareOp::kGe}, {"at least", "no less than", "not below"});
  lexicon.add(Terminal{CompareOp::kLike}, {"like", "containing"});
  lexicon.add(Terminal{CompareOp::kBetween}, {"between"});
  lexicon.add(Terminal{SortDir::kAsc}, {"ascending", "from smallest to largest"});
  lexicon.add(Terminal{SortDir::kDesc}, {"descending", "from largest to smallest"});
  return lexicon;
}

std::string NlTemplate::str() const {
  std::string out;
  for (const Token& tok : tokens) {
    if (!out.empty()) out += ' ';
    if (const SlotName* slot = std::get_if<SlotName>(&tok)) {
      out += slot->str();
    } else {
      out += std::get<std::string>(tok);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived constraints

namespace {

void scan_core_constraints(const SelectCore& core, ProductionRule& rule);

void note_numeric(ProductionRule& rule, const ColumnRef& col) {
  if (const SlotName* slot = get_slot(col.name)) rule.requires_numeric.insert(*slot);
}

void scan_agg(const AggExpr& agg, ProductionRule& rule) {
  if (!agg.arg) return;
  const bool numeric_fn =
      is_slot(agg.fn) || std::get<AggFn>(agg.fn) != AggFn::kCount;
  if (numeric_fn) note_numeric(rule, *agg.arg);
}

void scan_condition_constraints(const Condition& cond, ProductionRule& rule) {
  if (const AggExpr* agg = std::get_if<AggExpr>(&cond.lhs)) {
    scan_agg(*agg, rule);
  } else if (const CompareOp* op = std::get_if<CompareOp>(&cond.op)) {
    if (is_arithmetic(*op)) note_numeric(rule, std::get<ColumnRef>(cond.lhs));
  }
  if (cond.subquery) scan_core_constraints(*cond.subquery->select, rule);
}

void scan_operand_constraints(const Operand& operand, ProductionRule& rule) {
  if (const AggExpr* agg = std::get_if<AggExpr>(&operand)) scan_agg(*agg, rule);
}

void scan_core_constraints(const SelectCore& core, ProductionRule& rule) {
  for (const Operand& p : core.projections) scan_operand_constraints(p, rule);
  for (const Condition& c : core.where) scan_condition_constraints(c, rule);
  for (const Condition& c : core.having) scan_condition_constraints(c, rule);
  for (const OrderItem& o : core.order_by) scan_operand_constraints(o.key, rule);
}

}  // namespace

ProductionRule derive_constraints(ProductionRule rule) {
  rule.requires_numeric.clear();
  std::set<SlotName> columns;
  bool multi = false;
  visit_slots(rule.sql, [&](const SlotName& slot) {
    if (slot.kind == SlotKind::kColumn) columns.insert(slot);
    if (slot.kind == SlotKind::kTable && slot.ordinal >= 1) multi = true;
  });
  rule.min_columns = static_cast<int>(columns.size());
  scan_core_constraints(rule.sql.head, rule);
  if (rule.sql.set_op) scan_core_constraints(rule.sql.set_op->select, rule);
  if (rule.sql.head.from && rule.sql.head.from->join) multi = true;
  if (rule.sql.set_op && rule.sql.set_op->select.from &&
      rule.sql.set_op->select.from->join) {
    multi = true;
  }
  rule.multi_table = multi;
  return rule;
}

// ---------------------------------------------------------------------------
// Value-slot contexts

namespace {

void context_conflict(const SlotName& slot) {
  throw GrammarError("", "VALUE slot " + slot.str() +
                             " is used in conflicting contexts");
}

void record_context(std::map<SlotName, ValueContext>& out, const SlotName& slot,
                    ValueContext ctx) {
  auto [it, inserted] = out.emplace(slot, ctx);
  if (!inserted && !(it->second == ctx)) context_conflict(slot);
}

void scan_core_values(const SelectCore& core, std::map<SlotName, ValueContext>& out);

void scan_condition_values(const Condition& cond,
                           std::map<SlotName, ValueContext>& out) {
  ValueContext ctx;
  if (const ColumnRef* col = std::get_if<ColumnRef>(&cond.lhs)) {
    const CompareOp* op = std::get_if<CompareOp>(&cond.op);
    ctx.kind = (op && *op == CompareOp::kLike) ? ValueContext::Kind::kLikePattern
                                               : ValueContext::Kind::kCell;
    ctx.column = col->name;
  } else {
    const AggExpr& agg = std::get<AggExpr>(cond.lhs);
    if (!is_slot(agg.fn) && std::get<AggFn>(agg.fn) == AggFn::kCount) {
      ctx.kind = ValueContext::Kind::kCountThreshold;
    } else {
      // MAX/MIN/AVG/SUM (or an AGG slot) over a column: compare against a
      // sampled cell of that column so the literal stays grounded.
      ctx.kind = ValueContext::Kind::kCell;
      if (agg.arg) ctx.column = agg.arg->name;
    }
  }
  for (const ValueTerm& v : cond.values) {
    if (const SlotName* slot = get_slot(v)) record_context(out, *slot, ctx);
  }
  if (cond.subquery) scan_core_values(*cond.subquery->select, out);
}

void scan_core_values(const SelectCore& core, std::map<SlotName, ValueContext>& out) {
  for (const Condition& c : core.where) scan_condition_values(c, out);
  for (const Condition& c : core.having) scan_condition_values(c, out);
  if (core.limit) {
    if (const SlotName* slot = get_slot(*core.limit)) {
      record_context(out, *slot, ValueContext{ValueContext::Kind::kLimitCount, {}});
    }
  }
}

}  // namespace

std::map<SlotName, ValueContext> value_slot_contexts(const Query& templ) {
  std::map<SlotName, ValueContext> out;
  scan_core_values(templ.head, out);
  if (templ.set_op) scan_core_values(templ.set_op->select, out);
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string word;
  while (in >> word) out.push_back(std::move(word));
  return out;
}

NlTemplate parse_nl(const std::string& line) {
  NlTemplate nl;
  for (std::string& word : split_ws(line)) {
    if (std::optional<SlotName> slot = SlotName::parse(word)) {
      nl.tokens.emplace_back(*slot);
    } else {
      nl.tokens.emplace_back(std::move(word));
    }
  }
  return nl;
}

std::map<SlotName, int> slot_counts(const std::vector<SlotName>& slots) {
  std::map<SlotName, int> counts;
  for (const SlotName& s : slots) ++counts[s];
  return counts;
}

void validate_rule(ProductionRule& rule) {
  if (rule.rule_id.empty()) throw GrammarError("", "rule without an id");
  if (rule.nl.empty()) throw GrammarError(rule.rule_id, "rule has no nl template");
  if (rule.weight <= 0) throw GrammarError(rule.rule_id, "weight must be positive");

  const std::map<SlotName, int> sql_slots = slot_counts(collect_slots(rule.sql));
  for (const NlTemplate& nl : rule.nl) {
    if (nl.tokens.empty()) throw GrammarError(rule.rule_id, "empty nl template");
    std::map<SlotName, int> nl_slots;
    for (const NlTemplate::Token& tok : nl.tokens) {
      if (const SlotName* slot = std::get_if<SlotName>(&tok)) ++nl_slots[*slot];
    }
    for (const auto& [slot, count] : nl_slots) {
      // TABLE0 always denotes the bound table, even when a single-table SQL
      // template elides its FROM clause.
      if (slot.kind == SlotKind::kTable && slot.ordinal == 0) continue;
      auto it = sql_slots.find(slot);
      if (it == sql_slots.end()) {
        throw GrammarError(rule.rule_id,
                           "nl slot " + slot.str() + " not in SQL template");
      }
      if (count > it->second) {
        throw GrammarError(rule.rule_id, "nl mentions " + slot.str() +
                                             " more often than the SQL template");
      }
    }
  }
  // Also throws on a VALUE slot with inconsistent grounding contexts.
  try {
    value_slot_contexts(rule.sql);
  } catch (const GrammarError& e) {
    throw GrammarError(rule.rule_id, e.what());
  }
}

void validate_lexicon_coverage(const Grammar& grammar) {
  bool needs_agg = false;
  bool needs_op = false;
  bool needs_sc = false;
  for (const ProductionRule& rule : grammar.rules) {
    visit_slots(rule.sql, [&](const SlotName& slot) {
      if (slot.kind == SlotKind::kAgg) needs_agg = true;
      if (slot.kind == SlotKind::kOp) needs_op = true;
      if (slot.kind == SlotKind::kSc) needs_sc = true;
    });
  }
  auto count_backed = [&](auto&& pred) {
    int n = 0;
    for (const auto& [terminal, phrases] : grammar.lexicon.entries()) {
      if (!phrases.empty() && pred(terminal)) ++n;
    }
    return n;
  };
  if (needs_agg && count_backed([](const Terminal& t) {
        return std::holds_alternative<AggFn>(t);
      }) == 0) {
    throw GrammarError("", "grammar uses AGG slots but lexicon has no aggregate phrases");
  }
  if (needs_op && count_backed([](const Terminal& t) {
        const CompareOp* op = std::get_if<CompareOp>(&t);
        return op && *op != CompareOp::kLike && *op != CompareOp::kBetween &&
               *op != CompareOp::kIn && *op != CompareOp::kNotIn;
      }) == 0) {
    throw GrammarError("", "grammar uses OP slots but lexicon has no comparison phrases");
  }
  if (needs_sc && count_backed([](const Terminal& t) {
        return std::holds_alternative<SortDir>(t);
      }) == 0) {
    throw GrammarError("", "grammar uses SC slots but lexicon has no sort phrases");
  }
}

}  // namespace

const ProductionRule* Grammar::find_rule(const std::string& rule_id) const {
  for (const ProductionRule& rule : rules) {
    if (rule.rule_id == rule_id) return &rule;
  }
  return nullptr;
}

Grammar parse_grammar(std::string_view text) {
  Grammar grammar;
  enum class Section { kNone, kLexicon, kRule };
  Section section = Section::kNone;
  std::optional<ProductionRule> current;

  auto finish_rule = [&] {
    if (!current) return;
    try {
      current->sql = parse_sql(current->sql_text, ParseMode::kTemplate);
    } catch (const ParseError& e) {
      throw GrammarError(current->rule_id, std::string("SQL template: ") + e.what());
    }
    current->sql_text = render_sql(current->sql);
    *current = derive_constraints(std::move(*current));
    validate_rule(*current);
    if (grammar.find_rule(current->rule_id)) {
      throw GrammarError(current->rule_id, "duplicate rule id");
    }
    grammar.rules.push_back(std::move(*current));
    current.reset();
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line == "[lexicon]") {
      finish_rule();
      section = Section::kLexicon;
      continue;
    }
    if (line == "[rule]") {
      finish_rule();
      section = Section::kRule;
      current.emplace();
      continue;
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) {
      throw GrammarError("", "line " + std::to_string(line_no) + ": expected 'key: value'");
    }
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (section == Section::kLexicon) {
      std::optional<Terminal> terminal = terminal_from_token(key);
      if (!terminal) {
        throw GrammarError("", "line " + std::to_string(line_no) +
                                   ": unknown terminal '" + key + "'");
      }
      if (grammar.lexicon.find(*terminal)) {
        throw GrammarError("", "duplicate lexicon entry for " + key);
      }
      std::vector<std::string> phrases;
      std::size_t start = 0;
      while (start <= value.size()) {
        const std::size_t bar = value.find('|', start);
        const std::size_t len = bar == std::string::npos ? std::string::npos : bar - start;
        const std::string phrase = trim(value.substr(start, len));
        if (!phrase.empty()) phrases.push_back(phrase);
        if (bar == std::string::npos) break;
        start = bar + 1;
      }
      if (phrases.empty()) {
        throw GrammarError("", "terminal " + key + " has no phrases");
      }
      grammar.lexicon.add(*terminal, std::move(phrases));
    } else if (section == Section::kRule) {
      if (!current) throw GrammarError("", "rule line outside a [rule] block");
      if (key == "id") {
        current->rule_id = value;
      } else if (key == "nl") {
        if (value.empty()) throw GrammarError(current->rule_id, "empty nl template");
        current->nl.push_back(parse_nl(value));
      } else if (key == "sql") {
        if (!current->sql_text.empty()) {
          throw GrammarError(current->rule_id, "duplicate sql line");
        }
        current->sql_text = value;
      } else if (key == "weight") {
        try {
          current->weight = std::stod(value);
        } catch (const std::exception&) {
          throw GrammarError(current->rule_id, "bad weight '" + value + "'");
        }
      } else {
        throw GrammarError(current->rule_id, "unknown rule key '" + key + "'");
      }
    } else {
      throw GrammarError("", "line " + std::to_string(line_no) +
                                 " appears before any section header");
    }
  }
  finish_rule();
  validate_lexicon_coverage(grammar);
  return grammar;
}

Grammar load_grammar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open grammar file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_grammar(buffer.str());
}

std::string serialize_grammar(const Grammar& grammar) {
  std::ostringstream out;
  out << "[lexicon]\n";
  for (const auto& [terminal, phrases] : grammar.lexicon.entries()) {
    out << terminal_token(terminal) << ": ";
    for (std::size_t i = 0; i < phrases.size(); ++i) {
      if (i > 0) out << " | ";
      out << phrases[i];
    }
    out << '\n';
  }
  for (const ProductionRule& rule : grammar.rules) {
    out << "\n[rule]\n";
    out << "id: " << rule.rule_id << '\n';
    for (const NlTemplate& nl : rule.nl) out << "nl: " << nl.str() << '\n';
    out << "sql: " << rule.sql_text << '\n';
    if (rule.weight != 1.0) out << "weight: " << rule.weight << '\n';
  }
  return out.str();
}

}  // namespace sqlsynth
