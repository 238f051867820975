#include "sqlsynth/labeler.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "sqlsynth/parser.hpp"

namespace sqlsynth {

std::string_view value_origin_name(ValueOrigin origin) {
  switch (origin) {
    case ValueOrigin::kCell: return "cell";
    case ValueOrigin::kCountThreshold: return "count_threshold";
    case ValueOrigin::kLimitCount: return "limit_count";
    case ValueOrigin::kLikePattern: return "like_pattern";
  }
  return "";
}

SlotBindings Binding::to_slot_bindings() const {
  SlotBindings out;
  for (const auto& [slot, term] : slots) {
    std::visit(
        [&, &slot = slot](const auto& bound) {
          using T = std::decay_t<decltype(bound)>;
          if constexpr (std::is_same_v<T, BoundTable>) {
            out.emplace(slot, bound.name);
          } else if constexpr (std::is_same_v<T, BoundColumn>) {
            out.emplace(slot, bound.name);
          } else if constexpr (std::is_same_v<T, BoundValue>) {
            out.emplace(slot, bound.literal);
          } else if constexpr (std::is_same_v<T, BoundAgg>) {
            out.emplace(slot, bound.fn);
          } else if constexpr (std::is_same_v<T, BoundOp>) {
            out.emplace(slot, bound.op);
          } else {
            out.emplace(slot, bound.dir);
          }
        },
        term);
  }
  return out;
}

std::string Binding::surface(const SlotName& slot) const {
  auto it = slots.find(slot);
  if (it == slots.end()) throw UnboundSlotError("unbound slot " + slot.str());
  return std::visit(
      [](const auto& bound) -> std::string {
        using T = std::decay_t<decltype(bound)>;
        if constexpr (std::is_same_v<T, BoundTable>) {
          return bound.name;
        } else if constexpr (std::is_same_v<T, BoundColumn>) {
          return bound.name;
        } else if constexpr (std::is_same_v<T, BoundValue>) {
          return bound.literal.text;
        } else {
          return bound.phrase;
        }
      },
      it->second);
}

// ---------------------------------------------------------------------------
// Clause-role walk

namespace {

enum class Clause {
  kSelect,
  kWhere,
  kGroupBy,
  kGroupByHaving,
  kHaving,
  kOrderBy,
  kOrderByLimit,
};

int clause_rank(Clause clause) {
  switch (clause) {
    case Clause::kSelect: return 0;
    case Clause::kWhere: return 2;
    case Clause::kGroupBy:
    case Clause::kGroupByHaving: return 3;
    case Clause::kHaving: return 4;
    case Clause::kOrderBy:
    case Clause::kOrderByLimit: return 5;
  }
  return 0;
}

std::string_view clause_text(Clause clause) {
  switch (clause) {
    case Clause::kSelect: return "SELECT";
    case Clause::kWhere: return "WHERE";
    case Clause::kGroupBy: return "GROUP BY";
    case Clause::kGroupByHaving: return "GROUP BY HAVING";
    case Clause::kHaving: return "HAVING";
    case Clause::kOrderBy: return "ORDER BY";
    case Clause::kOrderByLimit: return "ORDER BY LIMIT";
  }
  return "";
}

struct Atom {
  int ctx_rank = 0;
  std::string prefix;  // "", "SUB", "INTERSECT", "INTERSECT SUB", ...
  Clause clause = Clause::kSelect;

  bool operator<(const Atom& other) const {
    if (ctx_rank != other.ctx_rank) return ctx_rank < other.ctx_rank;
    if (clause_rank(clause) != clause_rank(other.clause)) {
      return clause_rank(clause) < clause_rank(other.clause);
    }
    return clause < other.clause;
  }

  std::string str() const {
    if (prefix.empty()) return std::string(clause_text(clause));
    return prefix + " " + std::string(clause_text(clause));
  }
};

struct WalkContext {
  int setop_base = 0;  // 0 main, 1 INTERSECT, 2 UNION, 3 EXCEPT
  bool in_subquery = false;

  int rank() const { return setop_base * 2 + (in_subquery ? 1 : 0); }

  std::string prefix() const {
    static const char* setop_names[] = {"", "INTERSECT", "UNION", "EXCEPT"};
    std::string out = setop_names[setop_base];
    if (in_subquery) {
      if (!out.empty()) out += ' ';
      out += "SUB";
    }
    return out;
  }
};

using ColumnSink = std::function<void(const ColumnRef&, const Atom&)>;

void emit_operand(const Operand& operand, const Atom& atom, const ColumnSink& sink) {
  if (const ColumnRef* col = std::get_if<ColumnRef>(&operand)) {
    sink(*col, atom);
    return;
  }
  const AggExpr& agg = std::get<AggExpr>(operand);
  if (agg.arg) sink(*agg.arg, atom);
}

void walk_core(const SelectCore& core, const WalkContext& ctx, const ColumnSink& sink) {
  const Atom base{ctx.rank(), ctx.prefix(), Clause::kSelect};
  auto atom = [&](Clause clause) {
    Atom a = base;
    a.clause = clause;
    return a;
  };

  for (const Operand& p : core.projections) emit_operand(p, atom(Clause::kSelect), sink);

  WalkContext sub_ctx = ctx;
  sub_ctx.in_subquery = true;
  auto walk_conditions = [&](const std::vector<Condition>& conds, Clause clause) {
    for (const Condition& cond : conds) {
      emit_operand(cond.lhs, atom(clause), sink);
      if (cond.subquery) walk_core(*cond.subquery->select, sub_ctx, sink);
    }
  };

  walk_conditions(core.where, Clause::kWhere);
  const Clause group_clause =
      core.having.empty() ? Clause::kGroupBy : Clause::kGroupByHaving;
  for (const ColumnRef& col : core.group_by) sink(col, atom(group_clause));
  walk_conditions(core.having, Clause::kHaving);
  const Clause order_clause =
      core.limit.has_value() ? Clause::kOrderByLimit : Clause::kOrderBy;
  for (const OrderItem& item : core.order_by) {
    emit_operand(item.key, atom(order_clause), sink);
  }
}

void walk_query(const Query& query, const ColumnSink& sink) {
  walk_core(query.head, WalkContext{}, sink);
  if (query.set_op) {
    WalkContext arm;
    switch (query.set_op->kind) {
      case SetOpKind::kIntersect: arm.setop_base = 1; break;
      case SetOpKind::kUnion: arm.setop_base = 2; break;
      case SetOpKind::kExcept: arm.setop_base = 3; break;
    }
    walk_core(query.set_op->select, arm, sink);
  }
}

bool query_has_join(const Query& query) {
  const auto core_has_join = [](const SelectCore& core) {
    return core.from && core.from->join.has_value();
  };
  if (core_has_join(query.head)) return true;
  return query.set_op && core_has_join(query.set_op->select);
}

std::string atoms_to_label(const std::set<Atom>& atoms) {
  if (atoms.empty()) return std::string(kNoneLabel);
  std::string out;
  for (const Atom& atom : atoms) {
    if (!out.empty()) out += " AND ";
    out += atom.str();
  }
  return out;
}

std::map<int, std::string> finish_labels(const std::map<int, std::set<Atom>>& atoms,
                                         const TableSchema& schema) {
  std::map<int, std::string> labels;
  for (const ColumnMeta& col : schema.columns) {
    labels[col.index] = std::string(kNoneLabel);
  }
  for (const auto& [index, set] : atoms) labels[index] = atoms_to_label(set);
  return labels;
}

}  // namespace

std::map<int, std::string> label_columns(const Query& sql, const TableSchema& schema) {
  if (query_has_join(sql)) {
    throw LabelError("cannot label a joined query against a single table schema");
  }
  std::map<int, std::set<Atom>> atoms;
  walk_query(sql, [&](const ColumnRef& col, const Atom& atom) {
    const std::string* name = std::get_if<std::string>(&col.name);
    if (!name) throw LabelError("slot column in a concrete query");
    if (col.table) {
      const std::string* qualifier = std::get_if<std::string>(&*col.table);
      if (!qualifier || normalize_name(*qualifier) != normalize_name(schema.name)) {
        throw LabelError("column qualifier does not match schema '" + schema.name + "'");
      }
    }
    const std::optional<int> index = resolve_column(schema, *name);
    if (!index) {
      throw LabelError("column '" + *name + "' not found in table '" +
                       schema.name + "'");
    }
    atoms[*index].insert(atom);
  });
  return finish_labels(atoms, schema);
}

std::map<int, std::string> labels_from_template(const Query& templ,
                                                const Binding& binding,
                                                const TableSchema& schema) {
  std::map<int, std::set<Atom>> atoms;
  walk_query(templ, [&](const ColumnRef& col, const Atom& atom) {
    int index = -1;
    if (const SlotName* slot = get_slot(col.name)) {
      auto it = binding.slots.find(*slot);
      if (it == binding.slots.end()) {
        throw UnboundSlotError("unbound slot " + slot->str());
      }
      const BoundColumn* bound = std::get_if<BoundColumn>(&it->second);
      if (!bound) throw LabelError("slot " + slot->str() + " is not bound to a column");
      index = bound->index;
    } else {
      const std::optional<int> resolved =
          resolve_column(schema, std::get<std::string>(col.name));
      if (!resolved) {
        throw LabelError("template column '" + std::get<std::string>(col.name) +
                         "' not found in table '" + schema.name + "'");
      }
      index = *resolved;
    }
    atoms[index].insert(atom);
  });
  return finish_labels(atoms, schema);
}

VerifyResult verify_against_binding(const SynthExample& example,
                                    const Query& rule_template,
                                    const TableSchema& schema) {
  VerifyResult result;
  std::map<int, std::string> from_sql;
  try {
    // Re-parse from the serialized string so this route is independent of
    // the AST the synthesizer produced.
    from_sql = label_columns(parse_sql(example.sql, ParseMode::kConcrete), schema);
  } catch (const Error& e) {
    result.ok = false;
    result.diffs.push_back(std::string("sql route failed: ") + e.what());
    return result;
  }
  std::map<int, std::string> from_template;
  try {
    from_template = labels_from_template(rule_template, example.binding, schema);
  } catch (const Error& e) {
    result.ok = false;
    result.diffs.push_back(std::string("template route failed: ") + e.what());
    return result;
  }

  auto compare = [&](const std::map<int, std::string>& expected, const char* route) {
    for (const ColumnMeta& col : schema.columns) {
      const auto want = expected.find(col.index);
      const auto got = example.labels.find(col.index);
      const std::string want_label =
          want == expected.end() ? std::string(kNoneLabel) : want->second;
      const std::string got_label =
          got == example.labels.end() ? std::string("<missing>") : got->second;
      if (want_label != got_label) {
        result.ok = false;
        result.diffs.push_back("column " + std::to_string(col.index) + " (" +
                               col.name + "): " + route + " route expected '" +
                               want_label + "', example has '" + got_label + "'");
      }
    }
  };
  compare(from_sql, "sql");
  compare(from_template, "template");
  return result;
}

// ---------------------------------------------------------------------------
// Vocabulary

LabelVocabulary::LabelVocabulary() {
  labels_.emplace_back(kNoneLabel);
  rebuild_index();
}

LabelVocabulary LabelVocabulary::from_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::erase(labels, std::string(kNoneLabel));
  LabelVocabulary vocab;
  vocab.labels_.clear();
  vocab.labels_.emplace_back(kNoneLabel);
  vocab.labels_.insert(vocab.labels_.end(), std::make_move_iterator(labels.begin()),
                       std::make_move_iterator(labels.end()));
  vocab.rebuild_index();
  return vocab;
}

void LabelVocabulary::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    index_[labels_[i]] = static_cast<int>(i);
  }
  // FNV-1a over the label list: order-independent provenance for a dataset
  // because the list itself is canonically sorted.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string& label : labels_) {
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    h ^= '\n';
    h *= 0x100000001b3ULL;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  provenance_ = hex.str();
}

std::optional<int> LabelVocabulary::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int LabelVocabulary::index_of(const std::string& label) const {
  const std::optional<int> index = find(label);
  if (!index) throw VocabError("label not in vocabulary: '" + label + "'");
  return *index;
}

void LabelVocabulary::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const std::string& label : labels_) out << label << '\n';
}

LabelVocabulary LabelVocabulary::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  LabelVocabulary vocab;
  vocab.labels_.clear();
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) vocab.labels_.push_back(line);
  }
  if (vocab.labels_.empty() || vocab.labels_.front() != kNoneLabel) {
    throw VocabError("vocabulary file must start with NONE: " + path.string());
  }
  vocab.rebuild_index();
  return vocab;
}

LabelVocabulary build_vocabulary(const std::vector<SynthExample>& examples) {
  std::vector<std::string> labels;
  for (const SynthExample& example : examples) {
    for (const auto& [index, label] : example.labels) labels.push_back(label);
  }
  return LabelVocabulary::from_labels(std::move(labels));
}

}  // namespace sqlsynth
