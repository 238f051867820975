#include "sqlsynth/render.hpp"

#include <cctype>

#include "sqlsynth/parser.hpp"

namespace sqlsynth {

bool is_numeric_token(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) return false;
  if (i == text.size()) return true;
  if (text[i] != '.') return false;
  ++i;
  std::size_t frac = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
    ++frac;
  }
  return frac > 0 && i == text.size();
}

bool is_plain_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  if (is_reserved_word(name)) return false;
  if (SlotName::parse(name)) return false;
  return true;
}

namespace {

class Writer {
 public:
  void token(std::string_view t) {
    if (!out_.empty()) out_ += ' ';
    out_ += t;
  }

  void identifier(const std::string& name) {
    if (is_plain_identifier(name)) {
      token(name);
      return;
    }
    std::string quoted = "\"";
    for (char c : name) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    token(quoted);
  }

  void literal(const Literal& lit) {
    if (!lit.quoted) {
      token(lit.text);
      return;
    }
    std::string quoted = "'";
    for (char c : lit.text) {
      if (c == '\'') quoted += '\'';
      quoted += c;
    }
    quoted += '\'';
    token(quoted);
  }

  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

void write_identifier_term(Writer& w, const SlotOr<std::string>& term) {
  if (const SlotName* slot = get_slot(term)) {
    w.token(slot->str());
  } else {
    w.identifier(std::get<std::string>(term));
  }
}

void write_column(Writer& w, const ColumnRef& col) {
  if (col.table) {
    write_identifier_term(w, *col.table);
    w.token(".");
  }
  write_identifier_term(w, col.name);
}

void write_value(Writer& w, const ValueTerm& term) {
  if (const SlotName* slot = get_slot(term)) {
    w.token(slot->str());
  } else {
    w.literal(std::get<Literal>(term));
  }
}

void write_operand(Writer& w, const Operand& operand) {
  if (const ColumnRef* col = std::get_if<ColumnRef>(&operand)) {
    write_column(w, *col);
    return;
  }
  const AggExpr& agg = std::get<AggExpr>(operand);
  if (const SlotName* slot = get_slot(agg.fn)) {
    w.token(slot->str());
  } else {
    w.token(to_sql(std::get<AggFn>(agg.fn)));
  }
  w.token("(");
  if (agg.arg) {
    write_column(w, *agg.arg);
  } else {
    w.token("*");
  }
  w.token(")");
}

void write_core(Writer& w, const SelectCore& core);

void write_condition(Writer& w, const Condition& cond) {
  write_operand(w, cond.lhs);
  if (const SlotName* slot = get_slot(cond.op)) {
    w.token(slot->str());
  } else {
    const CompareOp op = std::get<CompareOp>(cond.op);
    w.token(to_sql(op));
    if (op == CompareOp::kBetween) {
      write_value(w, cond.values.at(0));
      w.token("AND");
      write_value(w, cond.values.at(1));
      return;
    }
  }
  if (cond.subquery) {
    w.token("(");
    write_core(w, *cond.subquery->select);
    w.token(")");
    return;
  }
  write_value(w, cond.values.at(0));
}

void write_core(Writer& w, const SelectCore& core) {
  w.token("SELECT");
  for (std::size_t i = 0; i < core.projections.size(); ++i) {
    if (i > 0) w.token(",");
    write_operand(w, core.projections[i]);
  }
  if (core.from) {
    w.token("FROM");
    write_identifier_term(w, core.from->table);
    if (core.from->join) {
      w.token("JOIN");
      write_identifier_term(w, core.from->join->table);
      w.token("ON");
      write_column(w, core.from->join->left);
      w.token("=");
      write_column(w, core.from->join->right);
    }
  }
  if (!core.where.empty()) {
    w.token("WHERE");
    for (std::size_t i = 0; i < core.where.size(); ++i) {
      if (i > 0) w.token("AND");
      write_condition(w, core.where[i]);
    }
  }
  if (!core.group_by.empty()) {
    w.token("GROUP");
    w.token("BY");
    for (std::size_t i = 0; i < core.group_by.size(); ++i) {
      if (i > 0) w.token(",");
      write_column(w, core.group_by[i]);
    }
  }
  if (!core.having.empty()) {
    w.token("HAVING");
    for (std::size_t i = 0; i < core.having.size(); ++i) {
      if (i > 0) w.token("AND");
      write_condition(w, core.having[i]);
    }
  }
  if (!core.order_by.empty()) {
    w.token("ORDER");
    w.token("BY");
    for (std::size_t i = 0; i < core.order_by.size(); ++i) {
      if (i > 0) w.token(",");
      const OrderItem& item = core.order_by[i];
      write_operand(w, item.key);
      if (item.dir) {
        if (const SlotName* slot = get_slot(*item.dir)) {
          w.token(slot->str());
        } else {
          w.token(to_sql(std::get<SortDir>(*item.dir)));
        }
      }
    }
  }
  if (core.limit) {
    w.token("LIMIT");
    write_value(w, *core.limit);
  }
}

}  // namespace

std::string render_sql(const Query& query) {
  Writer w;
  write_core(w, query.head);
  if (query.set_op) {
    w.token(to_sql(query.set_op->kind));
    write_core(w, query.set_op->select);
  }
  return w.take();
}

}  // namespace sqlsynth
