#include "sqlsynth/synthesizer.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sqlsynth/parser.hpp"
#include "sqlsynth/render.hpp"

namespace sqlsynth {

namespace {

bool fail(BindFailure* failure, std::string reason) {
  if (failure) failure->reason = std::move(reason);
  return false;
}

bool has_control_chars(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return static_cast<unsigned char>(c) < 0x20;
  });
}

// ---------------------------------------------------------------------------
// Template analysis: what each non-column slot needs from the table.

struct OpSpec {
  bool agg_lhs = false;                      // operand is an aggregate
  std::optional<SlotOr<std::string>> column; // operand column when not agg
};

struct ValueGroup {
  ValueContext::Kind kind = ValueContext::Kind::kCell;
  std::optional<SlotOr<std::string>> column;
  std::vector<SlotName> slots;  // 1 slot, or 2 for BETWEEN
};

struct TemplateAnalysis {
  std::map<SlotName, SlotOr<std::string>> agg_args;
  std::map<SlotName, OpSpec> op_specs;
  std::vector<ValueGroup> value_groups;  // template text order
  std::optional<SlotName> limit_slot;
  bool has_extra_tables = false;
};

void analyze_operand(const Operand& operand, TemplateAnalysis& out) {
  if (const AggExpr* agg = std::get_if<AggExpr>(&operand)) {
    if (const SlotName* slot = get_slot(agg->fn); slot && agg->arg) {
      out.agg_args.emplace(*slot, agg->arg->name);
    }
  }
}

void analyze_core(const SelectCore& core, TemplateAnalysis& out);

void analyze_condition(const Condition& cond, TemplateAnalysis& out) {
  analyze_operand(cond.lhs, out);

  if (const SlotName* op_slot = get_slot(cond.op)) {
    OpSpec spec;
    if (const ColumnRef* col = std::get_if<ColumnRef>(&cond.lhs)) {
      spec.column = col->name;
    } else {
      spec.agg_lhs = true;
    }
    out.op_specs.emplace(*op_slot, std::move(spec));
  }

  ValueGroup group;
  if (const ColumnRef* col = std::get_if<ColumnRef>(&cond.lhs)) {
    const CompareOp* op = std::get_if<CompareOp>(&cond.op);
    group.kind = (op && *op == CompareOp::kLike) ? ValueContext::Kind::kLikePattern
                                                 : ValueContext::Kind::kCell;
    group.column = col->name;
  } else {
    const AggExpr& agg = std::get<AggExpr>(cond.lhs);
    if (!is_slot(agg.fn) && std::get<AggFn>(agg.fn) == AggFn::kCount) {
      group.kind = ValueContext::Kind::kCountThreshold;
    } else {
      group.kind = ValueContext::Kind::kCell;
      if (agg.arg) group.column = agg.arg->name;
    }
  }
  for (const ValueTerm& v : cond.values) {
    if (const SlotName* slot = get_slot(v)) group.slots.push_back(*slot);
  }
  if (!group.slots.empty()) out.value_groups.push_back(std::move(group));

  if (cond.subquery) analyze_core(*cond.subquery->select, out);
}

void analyze_core(const SelectCore& core, TemplateAnalysis& out) {
  for (const Operand& p : core.projections) analyze_operand(p, out);
  for (const Condition& c : core.where) analyze_condition(c, out);
  for (const Condition& c : core.having) analyze_condition(c, out);
  for (const OrderItem& o : core.order_by) analyze_operand(o.key, out);
  if (core.limit) {
    if (const SlotName* slot = get_slot(*core.limit)) out.limit_slot = *slot;
  }
}

TemplateAnalysis analyze_template(const Query& templ) {
  TemplateAnalysis out;
  analyze_core(templ.head, out);
  if (templ.set_op) analyze_core(templ.set_op->select, out);
  visit_slots(templ, [&](const SlotName& slot) {
    if (slot.kind == SlotKind::kTable && slot.ordinal >= 1) out.has_extra_tables = true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Binding

// Resolves a column term (slot or concrete name) to a bound column index.
std::optional<int> resolve_term(const SlotOr<std::string>& term, const Binding& binding,
                                const TableSchema& table) {
  if (const SlotName* slot = get_slot(term)) {
    auto it = binding.slots.find(*slot);
    if (it == binding.slots.end()) return std::nullopt;
    const BoundColumn* col = std::get_if<BoundColumn>(&it->second);
    return col ? std::optional(col->index) : std::nullopt;
  }
  return resolve_column(table, std::get<std::string>(term));
}

// Distinct non-empty cells of one column in first-occurrence row order,
// restricted to cells that can appear as SQL literals (no control
// characters; plain numerals for NUMBER columns so they render bare).
std::vector<std::string> value_candidates(const TableSchema& table, int column,
                                          bool for_like) {
  std::vector<std::string> cells;
  std::set<std::string> seen;
  const bool numeric = table.columns[static_cast<std::size_t>(column)].col_type ==
                       ColType::kNumber;
  for (const auto& row : table.rows) {
    const std::string& cell = row[static_cast<std::size_t>(column)];
    if (normalize_name(cell).empty() || has_control_chars(cell)) continue;
    if (numeric && !for_like && !is_numeric_token(cell)) continue;
    if (for_like && (cell.find('%') != std::string::npos ||
                     cell.find('_') != std::string::npos)) {
      continue;
    }
    if (seen.insert(cell).second) cells.push_back(cell);
  }
  return cells;
}

double numeric_value(const std::string& text) {
  return std::strtod(text.c_str(), nullptr);
}

constexpr int kSmallCountMax = 5;  // HAVING-count and LIMIT thresholds: [1, 5]

}  // namespace

std::optional<Binding> bind_rule(const ProductionRule& rule, const TableSchema& table,
                                 const TerminalLexicon& lexicon, Rng& rng,
                                 BindFailure* failure) {
  if (rule.multi_table) {
    fail(failure, "rule needs a multi-table database grouping");
    return std::nullopt;
  }

  // Columns whose normalized name is unique within the table; a duplicated
  // header cannot be referenced unambiguously in SQL.
  std::map<std::string, int> name_counts;
  for (const ColumnMeta& col : table.columns) ++name_counts[normalize_name(col.name)];
  std::vector<int> pool;
  std::vector<int> numeric_pool;
  for (const ColumnMeta& col : table.columns) {
    if (name_counts[normalize_name(col.name)] != 1) continue;
    pool.push_back(col.index);
    if (col.col_type == ColType::kNumber) numeric_pool.push_back(col.index);
  }

  std::set<SlotName> column_slots;
  visit_slots(rule.sql, [&](const SlotName& slot) {
    if (slot.kind == SlotKind::kColumn) column_slots.insert(slot);
  });
  if (pool.size() < column_slots.size()) {
    fail(failure, "needs " + std::to_string(column_slots.size()) +
                      " distinct columns, table has " + std::to_string(pool.size()));
    return std::nullopt;
  }
  if (numeric_pool.size() < rule.requires_numeric.size()) {
    fail(failure, "needs " + std::to_string(rule.requires_numeric.size()) +
                      " numeric columns, table has " +
                      std::to_string(numeric_pool.size()));
    return std::nullopt;
  }

  Binding binding;
  binding.slots.emplace(SlotName{SlotKind::kTable, 0},
                        BoundTable{table.table_id, table.name});

  auto take_from = [&](std::vector<int>& from) {
    const int index = from[rng.below(from.size())];
    std::erase(pool, index);
    std::erase(numeric_pool, index);
    return index;
  };
  // Numeric-constrained slots draw first so unconstrained slots cannot
  // starve them of NUMBER columns.
  for (const SlotName& slot : rule.requires_numeric) {
    const int index = take_from(numeric_pool);
    binding.slots.emplace(slot, BoundColumn{index, table.columns[index].name});
  }
  for (const SlotName& slot : column_slots) {
    if (rule.requires_numeric.contains(slot)) continue;
    const int index = take_from(pool);
    binding.slots.emplace(slot, BoundColumn{index, table.columns[index].name});
  }

  const TemplateAnalysis analysis = analyze_template(rule.sql);
  if (analysis.has_extra_tables) {
    fail(failure, "rule needs a multi-table database grouping");
    return std::nullopt;
  }

  auto column_type = [&](const SlotOr<std::string>& term) -> std::optional<ColType> {
    const std::optional<int> index = resolve_term(term, binding, table);
    if (!index) return std::nullopt;
    return table.columns[static_cast<std::size_t>(*index)].col_type;
  };

  // AGG slots: COUNT fits any column; the others need numbers.
  for (const auto& [slot, arg] : analysis.agg_args) {
    const std::optional<ColType> type = column_type(arg);
    if (!type) {
      fail(failure, "aggregate argument does not resolve");
      return std::nullopt;
    }
    std::vector<AggFn> candidates;
    for (AggFn fn : kAllAggFns) {
      if (!lexicon.has(Terminal{fn})) continue;
      if (fn != AggFn::kCount && *type != ColType::kNumber) continue;
      candidates.push_back(fn);
    }
    if (candidates.empty()) {
      fail(failure, "no aggregate candidates for slot " + slot.str());
      return std::nullopt;
    }
    const AggFn fn = candidates[rng.below(candidates.size())];
    binding.slots.emplace(slot,
                          BoundAgg{fn, realize_phrase(Terminal{fn}, lexicon, rng)});
  }

  // OP slots: arithmetic comparisons only against NUMBER operands.
  constexpr std::array<CompareOp, 6> kSingleValueOps = {
      CompareOp::kEq, CompareOp::kNe, CompareOp::kLt,
      CompareOp::kLe, CompareOp::kGt, CompareOp::kGe};
  for (const auto& [slot, spec] : analysis.op_specs) {
    bool numeric_operand = spec.agg_lhs;
    if (!spec.agg_lhs) {
      const std::optional<ColType> type = column_type(*spec.column);
      if (!type) {
        fail(failure, "comparison operand does not resolve");
        return std::nullopt;
      }
      numeric_operand = *type == ColType::kNumber;
    }
    std::vector<CompareOp> candidates;
    for (CompareOp op : kSingleValueOps) {
      if (!lexicon.has(Terminal{op})) continue;
      if (is_arithmetic(op) && !numeric_operand) continue;
      candidates.push_back(op);
    }
    if (candidates.empty()) {
      fail(failure, "no comparison candidates for slot " + slot.str());
      return std::nullopt;
    }
    const CompareOp op = candidates[rng.below(candidates.size())];
    binding.slots.emplace(slot, BoundOp{op, realize_phrase(Terminal{op}, lexicon, rng)});
  }

  // SC slots.
  std::set<SlotName> sc_slots;
  visit_slots(rule.sql, [&](const SlotName& slot) {
    if (slot.kind == SlotKind::kSc) sc_slots.insert(slot);
  });
  for (const SlotName& slot : sc_slots) {
    std::vector<SortDir> candidates;
    for (SortDir dir : {SortDir::kAsc, SortDir::kDesc}) {
      if (lexicon.has(Terminal{dir})) candidates.push_back(dir);
    }
    if (candidates.empty()) {
      fail(failure, "no sort-direction candidates");
      return std::nullopt;
    }
    const SortDir dir = candidates[rng.below(candidates.size())];
    binding.slots.emplace(slot, BoundDir{dir, realize_phrase(Terminal{dir}, lexicon, rng)});
  }

  // VALUE slots, grouped per condition so BETWEEN bounds come ordered.
  auto small_int = [&] {
    return Literal{std::to_string(1 + rng.below(kSmallCountMax)), false};
  };
  for (const ValueGroup& group : analysis.value_groups) {
    if (binding.slots.contains(group.slots.front())) continue;  // slot reuse
    if (group.kind == ValueContext::Kind::kCountThreshold) {
      for (const SlotName& slot : group.slots) {
        binding.slots.emplace(
            slot, BoundValue{small_int(), ValueOrigin::kCountThreshold, -1, ""});
      }
      continue;
    }
    const std::optional<int> column = resolve_term(*group.column, binding, table);
    if (!column) {
      fail(failure, "condition column does not resolve");
      return std::nullopt;
    }
    const bool like = group.kind == ValueContext::Kind::kLikePattern;
    const std::vector<std::string> cells = value_candidates(table, *column, like);
    if (cells.empty()) {
      fail(failure, "column '" + table.columns[*column].name +
                        "' has no usable cells to sample");
      return std::nullopt;
    }
    const bool quoted =
        table.columns[static_cast<std::size_t>(*column)].col_type != ColType::kNumber;
    if (like) {
      const std::string& cell = cells[rng.below(cells.size())];
      const std::size_t mode = rng.below(3);
      std::string pattern = mode == 0   ? cell + "%"
                            : mode == 1 ? "%" + cell
                                        : "%" + cell + "%";
      binding.slots.emplace(group.slots.front(),
                            BoundValue{Literal{std::move(pattern), true},
                                       ValueOrigin::kLikePattern, *column, cell});
      continue;
    }
    if (group.slots.size() == 2) {  // BETWEEN low AND high
      std::string a = cells[rng.below(cells.size())];
      std::string b = cells[rng.below(cells.size())];
      const bool numeric = !quoted;
      const bool ordered = numeric ? numeric_value(a) <= numeric_value(b) : a <= b;
      if (!ordered) std::swap(a, b);
      binding.slots.emplace(group.slots[0], BoundValue{Literal{std::move(a), quoted},
                                                       ValueOrigin::kCell, *column, ""});
      binding.slots.emplace(group.slots[1], BoundValue{Literal{std::move(b), quoted},
                                                       ValueOrigin::kCell, *column, ""});
      continue;
    }
    const std::string& cell = cells[rng.below(cells.size())];
    binding.slots.emplace(group.slots.front(),
                          BoundValue{Literal{cell, quoted}, ValueOrigin::kCell,
                                     *column, ""});
  }
  if (analysis.limit_slot && !binding.slots.contains(*analysis.limit_slot)) {
    binding.slots.emplace(*analysis.limit_slot,
                          BoundValue{small_int(), ValueOrigin::kLimitCount, -1, ""});
  }

  return binding;
}

std::string render_question(const NlTemplate& nl, const Binding& binding) {
  std::string out;
  for (const NlTemplate::Token& token : nl.tokens) {
    const std::string piece = std::holds_alternative<SlotName>(token)
                                  ? binding.surface(std::get<SlotName>(token))
                                  : std::get<std::string>(token);
    if (piece.empty()) continue;
    if (!out.empty()) out += ' ';
    out += piece;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generation

namespace {

std::string eligibility_report(const Grammar& grammar, const TableCorpus& corpus,
                               const std::vector<const ProductionRule*>& usable) {
  std::ostringstream out;
  for (const ProductionRule* rule : usable) {
    std::size_t eligible = 0;
    for (const TableSchema& table : corpus.tables()) {
      std::map<std::string, int> counts;
      for (const ColumnMeta& col : table.columns) ++counts[normalize_name(col.name)];
      std::size_t unique = 0;
      std::size_t numeric = 0;
      for (const ColumnMeta& col : table.columns) {
        if (counts[normalize_name(col.name)] != 1) continue;
        ++unique;
        if (col.col_type == ColType::kNumber) ++numeric;
      }
      if (unique >= static_cast<std::size_t>(rule->min_columns) &&
          numeric >= rule->requires_numeric.size()) {
        ++eligible;
      }
    }
    out << "  rule " << rule->rule_id << ": needs " << rule->min_columns
        << " columns (" << rule->requires_numeric.size() << " numeric); "
        << eligible << "/" << corpus.size() << " tables eligible\n";
  }
  for (const ProductionRule& rule : grammar.rules) {
    if (rule.multi_table) {
      out << "  rule " << rule.rule_id
          << ": multi-table rule skipped (corpus has no database grouping)\n";
    }
  }
  return out.str();
}

struct RulePicker {
  std::vector<const ProductionRule*> rules;
  std::vector<double> cumulative;
  double total = 0;

  explicit RulePicker(const Grammar& grammar) {
    for (const ProductionRule& rule : grammar.rules) {
      if (rule.multi_table) continue;
      rules.push_back(&rule);
      total += rule.weight;
      cumulative.push_back(total);
    }
  }

  const ProductionRule& pick(Rng& rng) const {
    const double x = rng.unit() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    const std::size_t i =
        std::min(static_cast<std::size_t>(it - cumulative.begin()), rules.size() - 1);
    return *rules[i];
  }
};

std::string example_id_for(std::size_t index) {
  std::string digits = std::to_string(index);
  return "ex" + std::string(digits.size() < 8 ? 8 - digits.size() : 0, '0') + digits;
}

}  // namespace

GenerateResult generate(const Grammar& grammar, const TableCorpus& corpus,
                        const GenerateOptions& options) {
  GenerateResult result;
  if (options.count == 0) return result;

  const RulePicker picker(grammar);
  if (picker.rules.empty() || corpus.size() == 0) {
    result.complete = false;
    result.diagnostics = picker.rules.empty()
                             ? "grammar has no single-table rules\n"
                             : "corpus is empty\n";
    return result;
  }

  std::vector<std::optional<SynthExample>> slots(options.count);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(derive_seed(options.seed, i));
      for (int attempt = 0; attempt < options.retry_budget; ++attempt) {
        const ProductionRule& rule = picker.pick(rng);
        const TableSchema& table = corpus.at(rng.below(corpus.size()));
        std::optional<Binding> binding = bind_rule(rule, table, grammar.lexicon, rng);
        if (!binding) continue;

        SynthExample example;
        example.example_id = example_id_for(i);
        example.rule_id = rule.rule_id;
        example.table_id = table.table_id;
        example.binding = std::move(*binding);
        const Query concrete =
            substitute_slots(rule.sql, example.binding.to_slot_bindings());
        example.sql = render_sql(concrete);
        const std::size_t variant =
            rule.nl.size() > 1 ? rng.below(rule.nl.size()) : 0;
        example.question = render_question(rule.nl[variant], example.binding);
        example.labels = label_columns(concrete, table);
        slots[i] = std::move(example);
        break;
      }
    }
  };

  const std::size_t workers = std::max(1, options.workers);
  if (workers <= 1 || options.count < 2 * workers) {
    run_range(0, options.count);
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (options.count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(options.count, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(run_range, begin, end);
    }
    for (std::thread& t : threads) t.join();
  }

  for (std::size_t i = 0; i < options.count; ++i) {
    if (!slots[i]) {
      result.complete = false;
      result.diagnostics =
          "example " + std::to_string(i) + " exhausted its retry budget of " +
          std::to_string(options.retry_budget) + " table draws\n" +
          eligibility_report(grammar, corpus, picker.rules);
      break;
    }
    result.examples.push_back(std::move(*slots[i]));
  }
  return result;
}

// ---------------------------------------------------------------------------
// JSONL

namespace {

using nlohmann::ordered_json;

ordered_json binding_to_json(const Binding& binding) {
  ordered_json out = ordered_json::object();
  for (const auto& [slot, term] : binding.slots) {
    ordered_json entry = ordered_json::object();
    std::visit(
        [&](const auto& bound) {
          using T = std::decay_t<decltype(bound)>;
          if constexpr (std::is_same_v<T, BoundTable>) {
            entry["kind"] = "table";
            entry["text"] = bound.name;
            entry["id"] = bound.table_id;
          } else if constexpr (std::is_same_v<T, BoundColumn>) {
            entry["kind"] = "column";
            entry["text"] = bound.name;
            entry["index"] = bound.index;
          } else if constexpr (std::is_same_v<T, BoundValue>) {
            entry["kind"] = "value";
            entry["text"] = bound.literal.text;
            entry["quoted"] = bound.literal.quoted;
            entry["origin"] = std::string(value_origin_name(bound.origin));
            if (bound.column_index >= 0) entry["column"] = bound.column_index;
            if (!bound.base_cell.empty()) entry["base"] = bound.base_cell;
          } else if constexpr (std::is_same_v<T, BoundAgg>) {
            entry["kind"] = "agg";
            entry["text"] = std::string(to_sql(bound.fn));
            entry["phrase"] = bound.phrase;
          } else if constexpr (std::is_same_v<T, BoundOp>) {
            entry["kind"] = "op";
            entry["text"] = std::string(to_sql(bound.op));
            entry["phrase"] = bound.phrase;
          } else {
            entry["kind"] = "sc";
            entry["text"] = std::string(to_sql(bound.dir));
            entry["phrase"] = bound.phrase;
          }
        },
        term);
    out[slot.str()] = std::move(entry);
  }
  return out;
}

ValueOrigin origin_from_name(const std::string& name) {
  if (name == "cell") return ValueOrigin::kCell;
  if (name == "count_threshold") return ValueOrigin::kCountThreshold;
  if (name == "limit_count") return ValueOrigin::kLimitCount;
  if (name == "like_pattern") return ValueOrigin::kLikePattern;
  throw Error("unknown value origin '" + name + "'");
}

Binding binding_from_json(const ordered_json& obj) {
  Binding binding;
  for (const auto& [key, entry] : obj.items()) {
    const std::optional<SlotName> slot = SlotName::parse(key);
    if (!slot) throw Error("bad slot name '" + key + "' in binding");
    const std::string kind = entry.at("kind").get<std::string>();
    const std::string text = entry.at("text").get<std::string>();
    if (kind == "table") {
      binding.slots.emplace(*slot, BoundTable{entry.value("id", ""), text});
    } else if (kind == "column") {
      binding.slots.emplace(*slot, BoundColumn{entry.at("index").get<int>(), text});
    } else if (kind == "value") {
      BoundValue value;
      value.literal = Literal{text, entry.value("quoted", false)};
      value.origin = origin_from_name(entry.value("origin", "cell"));
      value.column_index = entry.value("column", -1);
      value.base_cell = entry.value("base", "");
      binding.slots.emplace(*slot, std::move(value));
    } else if (kind == "agg") {
      binding.slots.emplace(
          *slot, BoundAgg{*agg_from_sql(text), entry.value("phrase", "")});
    } else if (kind == "op") {
      binding.slots.emplace(
          *slot, BoundOp{*op_from_sql(text), entry.value("phrase", "")});
    } else if (kind == "sc") {
      binding.slots.emplace(
          *slot, BoundDir{*dir_from_sql(text), entry.value("phrase", "")});
    } else {
      throw Error("unknown binding kind '" + kind + "'");
    }
  }
  return binding;
}

}  // namespace

void write_examples_jsonl(const std::filesystem::path& path,
                          const std::vector<SynthExample>& examples) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const SynthExample& example : examples) {
    ordered_json line = ordered_json::object();
    line["id"] = example.example_id;
    line["question"] = example.question;
    line["sql"] = example.sql;
    line["table_id"] = example.table_id;
    line["rule_id"] = example.rule_id;
    line["binding"] = binding_to_json(example.binding);
    ordered_json labels = ordered_json::object();
    for (const auto& [index, label] : example.labels) {
      labels[std::to_string(index)] = label;
    }
    line["labels"] = std::move(labels);
    out << line.dump() << '\n';
  }
}

std::vector<SynthExample> read_examples_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<SynthExample> examples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json obj = ordered_json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": invalid JSON");
    }
    SynthExample example;
    example.example_id = obj.value("id", "");
    example.question = obj.value("question", "");
    example.sql = obj.value("sql", "");
    example.table_id = obj.value("table_id", "");
    example.rule_id = obj.value("rule_id", "");
    if (obj.contains("binding")) example.binding = binding_from_json(obj["binding"]);
    if (obj.contains("labels")) {
      for (const auto& [key, value] : obj["labels"].items()) {
        example.labels[std::stoi(key)] = value.get<std::string>();
      }
    }
    examples.push_back(std::move(example));
  }
  return examples;
}

}  // namespace sqlsynth
