#include "sqlsynth/ast.hpp"

#include <cctype>

namespace sqlsynth {

std::string_view to_sql(AggFn fn) {
  switch (fn) {
    case AggFn::kMax: return "MAX";
    case AggFn::kMin: return "MIN";
    case AggFn::kCount: return "COUNT";
    case AggFn::kAvg: return "AVG";
    case AggFn::kSum: return "SUM";
  }
  return "";
}

std::string_view to_sql(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "!=";
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
    case CompareOp::kLike: return "LIKE";
    case CompareOp::kBetween: return "BETWEEN";
    case CompareOp::kIn: return "IN";
    case CompareOp::kNotIn: return "NOT IN";
  }
  return "";
}

std::string_view to_sql(SortDir dir) {
  return dir == SortDir::kAsc ? "ASC" : "DESC";
}

std::string_view to_sql(SetOpKind kind) {
  switch (kind) {
    case SetOpKind::kIntersect: return "INTERSECT";
    case SetOpKind::kUnion: return "UNION";
    case SetOpKind::kExcept: return "EXCEPT";
  }
  return "";
}

namespace {

std::string upper_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::optional<AggFn> agg_from_sql(std::string_view token) {
  const std::string u = upper_ascii(token);
  for (AggFn fn : kAllAggFns) {
    if (u == to_sql(fn)) return fn;
  }
  return std::nullopt;
}

std::optional<CompareOp> op_from_sql(std::string_view token) {
  const std::string u = upper_ascii(token);
  if (u == "=") return CompareOp::kEq;
  if (u == "!=" || u == "<>") return CompareOp::kNe;
  if (u == "<") return CompareOp::kLt;
  if (u == "<=") return CompareOp::kLe;
  if (u == ">") return CompareOp::kGt;
  if (u == ">=") return CompareOp::kGe;
  if (u == "LIKE") return CompareOp::kLike;
  if (u == "BETWEEN") return CompareOp::kBetween;
  if (u == "IN") return CompareOp::kIn;
  if (u == "NOT IN") return CompareOp::kNotIn;
  return std::nullopt;
}

std::optional<SortDir> dir_from_sql(std::string_view token) {
  const std::string u = upper_ascii(token);
  if (u == "ASC") return SortDir::kAsc;
  if (u == "DESC") return SortDir::kDesc;
  return std::nullopt;
}

std::string_view slot_kind_name(SlotKind kind) {
  switch (kind) {
    case SlotKind::kTable: return "TABLE";
    case SlotKind::kColumn: return "COLUMN";
    case SlotKind::kValue: return "VALUE";
    case SlotKind::kAgg: return "AGG";
    case SlotKind::kOp: return "OP";
    case SlotKind::kSc: return "SC";
  }
  return "";
}

std::string SlotName::str() const {
  return std::string(slot_kind_name(kind)) + std::to_string(ordinal);
}

std::optional<SlotName> SlotName::parse(std::string_view token) {
  constexpr std::array<SlotKind, 6> kinds = {SlotKind::kTable,  SlotKind::kColumn,
                                             SlotKind::kValue,  SlotKind::kAgg,
                                             SlotKind::kOp,     SlotKind::kSc};
  for (SlotKind kind : kinds) {
    const std::string_view name = slot_kind_name(kind);
    if (token.size() <= name.size() || token.substr(0, name.size()) != name) continue;
    const std::string_view digits = token.substr(name.size());
    if (digits.size() > 1 && digits[0] == '0') return std::nullopt;  // no leading zeros
    int ordinal = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') return std::nullopt;
      ordinal = ordinal * 10 + (c - '0');
    }
    return SlotName{kind, ordinal};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Traversal

namespace {

using SlotFn = std::function<void(const SlotName&)>;

template <typename T>
void visit_term(const SlotOr<T>& term, const SlotFn& fn) {
  if (const SlotName* slot = get_slot(term)) fn(*slot);
}

void visit_column(const ColumnRef& col, const SlotFn& fn) {
  if (col.table) visit_term(*col.table, fn);
  visit_term(col.name, fn);
}

void visit_operand(const Operand& operand, const SlotFn& fn) {
  if (const ColumnRef* col = std::get_if<ColumnRef>(&operand)) {
    visit_column(*col, fn);
  } else {
    const AggExpr& agg = std::get<AggExpr>(operand);
    visit_term(agg.fn, fn);
    if (agg.arg) visit_column(*agg.arg, fn);
  }
}

void visit_core(const SelectCore& core, const SlotFn& fn);

void visit_condition(const Condition& cond, const SlotFn& fn) {
  visit_operand(cond.lhs, fn);
  visit_term(cond.op, fn);
  for (const ValueTerm& v : cond.values) visit_term(v, fn);
  if (cond.subquery) visit_core(*cond.subquery->select, fn);
}

void visit_core(const SelectCore& core, const SlotFn& fn) {
  for (const Operand& p : core.projections) visit_operand(p, fn);
  if (core.from) {
    visit_term(core.from->table, fn);
    if (core.from->join) {
      visit_term(core.from->join->table, fn);
      visit_column(core.from->join->left, fn);
      visit_column(core.from->join->right, fn);
    }
  }
  for (const Condition& c : core.where) visit_condition(c, fn);
  for (const ColumnRef& c : core.group_by) visit_column(c, fn);
  for (const Condition& c : core.having) visit_condition(c, fn);
  for (const OrderItem& o : core.order_by) {
    visit_operand(o.key, fn);
    if (o.dir) visit_term(*o.dir, fn);
  }
  if (core.limit) visit_term(*core.limit, fn);
}

}  // namespace

void visit_slots(const Query& query, const SlotFn& fn) {
  visit_core(query.head, fn);
  if (query.set_op) visit_core(query.set_op->select, fn);
}

std::vector<SlotName> collect_slots(const Query& query) {
  std::vector<SlotName> slots;
  visit_slots(query, [&](const SlotName& s) { slots.push_back(s); });
  return slots;
}

bool has_slots(const Query& query) {
  bool found = false;
  visit_slots(query, [&](const SlotName&) { found = true; });
  return found;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

const SlotValue& lookup(const SlotBindings& bindings, const SlotName& slot) {
  auto it = bindings.find(slot);
  if (it == bindings.end()) {
    throw UnboundSlotError("unbound slot " + slot.str());
  }
  return it->second;
}

void subst_identifier(SlotOr<std::string>& term, const SlotBindings& bindings,
                      SlotKind expected) {
  const SlotName* slot = get_slot(term);
  if (!slot) return;
  if (slot->kind != expected) {
    throw BindingTypeError("slot " + slot->str() + " used where " +
                           std::string(slot_kind_name(expected)) + " is required");
  }
  const SlotValue& value = lookup(bindings, *slot);
  const std::string* name = std::get_if<std::string>(&value);
  if (!name) throw BindingTypeError("slot " + slot->str() + " needs an identifier binding");
  term = *name;
}

void subst_column(ColumnRef& col, const SlotBindings& bindings) {
  if (col.table) subst_identifier(*col.table, bindings, SlotKind::kTable);
  subst_identifier(col.name, bindings, SlotKind::kColumn);
}

void subst_value(ValueTerm& term, const SlotBindings& bindings) {
  const SlotName* slot = get_slot(term);
  if (!slot) return;
  const SlotValue& value = lookup(bindings, *slot);
  const Literal* lit = std::get_if<Literal>(&value);
  if (!lit) throw BindingTypeError("slot " + slot->str() + " needs a literal binding");
  term = *lit;
}

void subst_operand(Operand& operand, const SlotBindings& bindings) {
  if (ColumnRef* col = std::get_if<ColumnRef>(&operand)) {
    subst_column(*col, bindings);
    return;
  }
  AggExpr& agg = std::get<AggExpr>(operand);
  if (const SlotName* slot = get_slot(agg.fn)) {
    const SlotValue& value = lookup(bindings, *slot);
    const AggFn* fn = std::get_if<AggFn>(&value);
    if (!fn) throw BindingTypeError("slot " + slot->str() + " needs an aggregate binding");
    agg.fn = *fn;
  }
  if (agg.arg) subst_column(*agg.arg, bindings);
}

void subst_core(SelectCore& core, const SlotBindings& bindings);

void subst_condition(Condition& cond, const SlotBindings& bindings) {
  subst_operand(cond.lhs, bindings);
  if (const SlotName* slot = get_slot(cond.op)) {
    const SlotValue& value = lookup(bindings, *slot);
    const CompareOp* op = std::get_if<CompareOp>(&value);
    if (!op) throw BindingTypeError("slot " + slot->str() + " needs a comparison binding");
    if (*op == CompareOp::kBetween || *op == CompareOp::kIn || *op == CompareOp::kNotIn) {
      throw BindingTypeError("slot " + slot->str() +
                             " cannot bind " + std::string(to_sql(*op)) +
                             " in a single-value comparison");
    }
    cond.op = *op;
  }
  for (ValueTerm& v : cond.values) subst_value(v, bindings);
  if (cond.subquery) subst_core(*cond.subquery->select, bindings);
}

void subst_core(SelectCore& core, const SlotBindings& bindings) {
  for (Operand& p : core.projections) subst_operand(p, bindings);
  if (core.from) {
    subst_identifier(core.from->table, bindings, SlotKind::kTable);
    if (core.from->join) {
      subst_identifier(core.from->join->table, bindings, SlotKind::kTable);
      subst_column(core.from->join->left, bindings);
      subst_column(core.from->join->right, bindings);
    }
  }
  for (Condition& c : core.where) subst_condition(c, bindings);
  for (ColumnRef& c : core.group_by) subst_column(c, bindings);
  for (Condition& c : core.having) subst_condition(c, bindings);
  for (OrderItem& o : core.order_by) {
    subst_operand(o.key, bindings);
    if (o.dir) {
      if (const SlotName* slot = get_slot(*o.dir)) {
        const SlotValue& value = lookup(bindings, *slot);
        const SortDir* dir = std::get_if<SortDir>(&value);
        if (!dir) throw BindingTypeError("slot " + slot->str() + " needs a sort direction");
        *o.dir = *dir;
      }
    }
  }
  if (core.limit) subst_value(*core.limit, bindings);
}

}  // namespace

Query substitute_slots(const Query& templ, const SlotBindings& bindings) {
  Query result = templ;
  subst_core(result.head, bindings);
  if (result.set_op) subst_core(result.set_op->select, bindings);
  return result;
}

}  // namespace sqlsynth
