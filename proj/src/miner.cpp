#include "sqlsynth/miner.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <json.hpp>

#include "sqlsynth/grammar.hpp"
#include "sqlsynth/parser.hpp"
#include "sqlsynth/render.hpp"

namespace sqlsynth {

namespace {

class Abstractor {
 public:
  explicit Abstractor(const TableSchema& schema) : schema_(schema) {}

  SlotBindings take_binding() { return std::move(binding_); }

  void table_term(SlotOr<std::string>& term) {
    const std::string& name = std::get<std::string>(term);
    if (normalize_name(name) != normalize_name(schema_.name) &&
        normalize_name(name) != normalize_name(schema_.table_id)) {
      throw AbstractionError("table '" + name + "' does not match schema '" +
                             schema_.name + "'");
    }
    term = assign(SlotKind::kTable, normalize_name(name), SlotValue{name});
  }

  void column_term(SlotOr<std::string>& term) {
    const std::string& name = std::get<std::string>(term);
    if (!resolve_column(schema_, name)) {
      throw AbstractionError("column '" + name + "' not found in table '" +
                             schema_.name + "'");
    }
    term = assign(SlotKind::kColumn, normalize_name(name), SlotValue{name});
  }

  void value_term(ValueTerm& term) {
    const Literal& lit = std::get<Literal>(term);
    const std::string key = (lit.quoted ? "q:" : "b:") + lit.text;
    term = assign(SlotKind::kValue, key, SlotValue{lit});
  }

  void agg_term(SlotOr<AggFn>& term) {
    const AggFn fn = std::get<AggFn>(term);
    term = assign(SlotKind::kAgg, std::string(to_sql(fn)), SlotValue{fn});
  }

  void op_term(SlotOr<CompareOp>& term) {
    const CompareOp op = std::get<CompareOp>(term);
    term = assign(SlotKind::kOp, std::string(to_sql(op)), SlotValue{op});
  }

  void dir_term(SlotOr<SortDir>& term) {
    const SortDir dir = std::get<SortDir>(term);
    term = assign(SlotKind::kSc, std::string(to_sql(dir)), SlotValue{dir});
  }

 private:
  SlotName assign(SlotKind kind, const std::string& key, SlotValue value) {
    auto [it, inserted] =
        ordinals_.emplace(std::pair(kind, key), next_[static_cast<int>(kind)]);
    if (inserted) {
      ++next_[static_cast<int>(kind)];
      binding_.emplace(SlotName{kind, it->second}, std::move(value));
    }
    return SlotName{kind, it->second};
  }

  const TableSchema& schema_;
  SlotBindings binding_;
  std::map<std::pair<SlotKind, std::string>, int> ordinals_;
  int next_[6] = {0, 0, 0, 0, 0, 0};
};

void abstract_core(SelectCore& core, Abstractor& ab);

void abstract_column(ColumnRef& col, Abstractor& ab) {
  if (col.table) ab.table_term(*col.table);
  ab.column_term(col.name);
}

void abstract_operand(Operand& operand, Abstractor& ab) {
  if (ColumnRef* col = std::get_if<ColumnRef>(&operand)) {
    abstract_column(*col, ab);
    return;
  }
  AggExpr& agg = std::get<AggExpr>(operand);
  // COUNT(*) keeps its keyword: an aggregate slot over * would be ill-typed
  // (MAX/AVG/... need a column), and varying it never changes the pattern.
  if (agg.arg) {
    ab.agg_term(agg.fn);
    abstract_column(*agg.arg, ab);
  }
}

void abstract_condition(Condition& cond, Abstractor& ab) {
  abstract_operand(cond.lhs, ab);
  const CompareOp op = std::get<CompareOp>(cond.op);
  if (op != CompareOp::kBetween && op != CompareOp::kIn && op != CompareOp::kNotIn) {
    ab.op_term(cond.op);
  }
  for (ValueTerm& v : cond.values) ab.value_term(v);
  if (cond.subquery) abstract_core(*cond.subquery->select, ab);
}

void abstract_core(SelectCore& core, Abstractor& ab) {
  for (Operand& p : core.projections) abstract_operand(p, ab);
  if (core.from) {
    ab.table_term(core.from->table);
    if (core.from->join) {
      ab.table_term(core.from->join->table);
      abstract_column(core.from->join->left, ab);
      abstract_column(core.from->join->right, ab);
    }
  }
  for (Condition& c : core.where) abstract_condition(c, ab);
  for (ColumnRef& c : core.group_by) abstract_column(c, ab);
  for (Condition& c : core.having) abstract_condition(c, ab);
  for (OrderItem& o : core.order_by) {
    abstract_operand(o.key, ab);
    if (o.dir) ab.dir_term(*o.dir);
  }
  if (core.limit) ab.value_term(*core.limit);
}

}  // namespace

AbstractionResult abstract_sql(const Query& concrete, const TableSchema& schema) {
  AbstractionResult result;
  result.templ = concrete;
  Abstractor ab(schema);
  abstract_core(result.templ.head, ab);
  if (result.templ.set_op) abstract_core(result.templ.set_op->select, ab);
  result.binding = ab.take_binding();
  return result;
}

MineResult mine_templates(const std::vector<SeedPair>& pairs, const TableCorpus& corpus,
                          int top_k, int exemplar_cap) {
  MineResult result;
  std::map<std::string, TemplateGroup> groups;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const SeedPair& pair = pairs[i];
    const int line = static_cast<int>(i) + 1;
    const std::optional<std::size_t> table = corpus.find(pair.table_id);
    if (!table) {
      result.skipped.push_back({"", line, "unknown table_id " + pair.table_id});
      continue;
    }
    Query concrete;
    try {
      concrete = parse_sql(pair.sql, ParseMode::kConcrete);
    } catch (const ParseError& e) {
      result.skipped.push_back({"", line, std::string("out of dialect: ") + e.what()});
      continue;
    }
    AbstractionResult abstracted;
    try {
      abstracted = abstract_sql(concrete, corpus.at(*table));
    } catch (const AbstractionError& e) {
      result.skipped.push_back({"", line, e.what()});
      continue;
    }
    const std::string key = render_sql(abstracted.templ);
    TemplateGroup& group = groups[key];
    if (group.count == 0) {
      group.beta = std::move(abstracted.templ);
      group.beta_text = key;
    }
    ++group.count;
    if (static_cast<int>(group.exemplars.size()) < exemplar_cap) {
      group.exemplars.push_back(pair);
    }
  }

  for (auto& [key, group] : groups) result.groups.push_back(std::move(group));
  std::stable_sort(result.groups.begin(), result.groups.end(),
                   [](const TemplateGroup& a, const TemplateGroup& b) {
                     if (a.count != b.count) return a.count > b.count;
                     return a.beta_text < b.beta_text;
                   });
  if (top_k >= 0 && result.groups.size() > static_cast<std::size_t>(top_k)) {
    result.groups.resize(static_cast<std::size_t>(top_k));
  }
  return result;
}

SeedLoadResult load_seed_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  SeedLoadResult result;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      result.skipped.push_back({path.string(), line_no, "invalid JSON"});
      continue;
    }
    SeedPair pair;
    pair.question = obj.value("question", "");
    pair.sql = obj.value("sql", "");
    pair.table_id = obj.value("table_id", "");
    if (pair.sql.empty() || pair.table_id.empty()) {
      result.skipped.push_back({path.string(), line_no, "missing sql or table_id"});
      continue;
    }
    result.pairs.push_back(std::move(pair));
  }
  return result;
}

void emit_rule_stubs(const std::vector<TemplateGroup>& groups,
                     const std::filesystem::path& path) {
  if (groups.empty()) throw Error("no template groups to emit");
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "# Rule stubs mined from seed pairs. Write one or more 'nl:' question\n";
  out << "# templates per rule (slot tokens bind to the same terminals as the\n";
  out << "# sql template), then check the file with validate-grammar.\n\n";

  Grammar shell;
  shell.lexicon = default_lexicon();
  out << serialize_grammar(shell);

  int rank = 0;
  for (const TemplateGroup& group : groups) {
    ++rank;
    out << "\n[rule]\n";
    char id[16];
    std::snprintf(id, sizeof(id), "t%03d", rank);
    out << "id: " << id << '\n';
    out << "# count: " << group.count << '\n';
    for (const SeedPair& exemplar : group.exemplars) {
      out << "# exemplar: " << exemplar.question << '\n';
    }
    out << "nl:\n";
    out << "sql: " << group.beta_text << '\n';
  }
}

}  // namespace sqlsynth
