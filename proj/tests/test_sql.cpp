#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqlsynth/ast.hpp"
#include "sqlsynth/parser.hpp"
#include "sqlsynth/render.hpp"
#include "sqlsynth/rng.hpp"

using namespace sqlsynth;

namespace {

const char* kRule1Template =
    "SELECT COLUMN0 , COUNT ( * ) WHERE COLUMN1 OP0 VALUE0 GROUP BY COLUMN0";
const char* kRule2Template =
    "SELECT COLUMN0 , COLUMN1 WHERE COLUMN2 OP0 ( SELECT AGG0 ( COLUMN2 ) )";

SlotName slot(SlotKind kind, int ordinal) { return SlotName{kind, ordinal}; }

}  // namespace

TEST_CASE("slot token recognition") {
  CHECK(SlotName::parse("COLUMN0") == slot(SlotKind::kColumn, 0));
  CHECK(SlotName::parse("TABLE12") == slot(SlotKind::kTable, 12));
  CHECK(SlotName::parse("OP3") == slot(SlotKind::kOp, 3));
  CHECK(SlotName::parse("SC1") == slot(SlotKind::kSc, 1));
  CHECK(SlotName::parse("VALUE7") == slot(SlotKind::kValue, 7));
  CHECK(SlotName::parse("AGG0") == slot(SlotKind::kAgg, 0));
  CHECK_FALSE(SlotName::parse("COLUMN").has_value());
  CHECK_FALSE(SlotName::parse("COLUMN01").has_value());  // no leading zeros
  CHECK_FALSE(SlotName::parse("column0").has_value());
  CHECK_FALSE(SlotName::parse("COLUMNx").has_value());
  CHECK(slot(SlotKind::kColumn, 3).str() == "COLUMN3");
}

TEST_CASE("template parse of the grouped-count pattern") {
  const Query q = parse_sql(kRule1Template, ParseMode::kTemplate);
  REQUIRE(q.head.projections.size() == 2);
  const ColumnRef& proj0 = std::get<ColumnRef>(q.head.projections[0]);
  CHECK(proj0.name == SlotOr<std::string>{slot(SlotKind::kColumn, 0)});
  const AggExpr& proj1 = std::get<AggExpr>(q.head.projections[1]);
  CHECK(proj1.fn == SlotOr<AggFn>{AggFn::kCount});
  CHECK_FALSE(proj1.arg.has_value());  // COUNT ( * )
  REQUIRE(q.head.where.size() == 1);
  const Condition& cond = q.head.where[0];
  CHECK(std::get<ColumnRef>(cond.lhs).name ==
        SlotOr<std::string>{slot(SlotKind::kColumn, 1)});
  CHECK(cond.op == SlotOr<CompareOp>{slot(SlotKind::kOp, 0)});
  REQUIRE(cond.values.size() == 1);
  CHECK(cond.values[0] == ValueTerm{slot(SlotKind::kValue, 0)});
  REQUIRE(q.head.group_by.size() == 1);
  CHECK(q.head.group_by[0].name == SlotOr<std::string>{slot(SlotKind::kColumn, 0)});
  CHECK_FALSE(q.set_op.has_value());
  CHECK_FALSE(q.head.from.has_value());
}

TEST_CASE("template parse of the scalar-subquery pattern") {
  const Query q = parse_sql(kRule2Template, ParseMode::kTemplate);
  REQUIRE(q.head.projections.size() == 2);
  REQUIRE(q.head.where.size() == 1);
  const Condition& cond = q.head.where[0];
  REQUIRE(cond.subquery.has_value());
  CHECK(cond.values.empty());
  const SelectCore& sub = *cond.subquery->select;
  REQUIRE(sub.projections.size() == 1);
  const AggExpr& agg = std::get<AggExpr>(sub.projections[0]);
  CHECK(agg.fn == SlotOr<AggFn>{slot(SlotKind::kAgg, 0)});
  REQUIRE(agg.arg.has_value());
  CHECK(agg.arg->name == SlotOr<std::string>{slot(SlotKind::kColumn, 2)});
}

TEST_CASE("round-trip of the paper template strings is exact") {
  for (const char* text : {kRule1Template, kRule2Template}) {
    const Query q = parse_sql(text, ParseMode::kTemplate);
    CHECK(render_sql(q) == text);
    CHECK(parse_sql(render_sql(q), ParseMode::kTemplate) == q);
  }
}

TEST_CASE("concrete mode rejects slot tokens") {
  CHECK_THROWS_AS(parse_sql(kRule1Template, ParseMode::kConcrete), ParseError);
  CHECK_THROWS_AS(parse_sql("SELECT COLUMN0", ParseMode::kConcrete), ParseError);
  // quoting turns the same spelling into an ordinary identifier
  const Query q = parse_sql("SELECT \"COLUMN0\"", ParseMode::kConcrete);
  CHECK(std::get<ColumnRef>(q.head.projections[0]).name ==
        SlotOr<std::string>{std::string("COLUMN0")});
  CHECK(render_sql(q) == "SELECT \"COLUMN0\"");
}

TEST_CASE("minimal concrete query") {
  const Query q = parse_sql("SELECT name", ParseMode::kConcrete);
  REQUIRE(q.head.projections.size() == 1);
  CHECK(q.head.where.empty());
  CHECK(q.head.group_by.empty());
  CHECK_FALSE(q.head.limit.has_value());
  CHECK(render_sql(q) == "SELECT name");
}

TEST_CASE("parse errors carry a position and reject out-of-dialect syntax") {
  CHECK_THROWS_AS(parse_sql("", ParseMode::kConcrete), ParseError);
  CHECK_THROWS_AS(parse_sql("SELECT", ParseMode::kConcrete), ParseError);
  CHECK_THROWS_AS(parse_sql("SELECT name WHERE", ParseMode::kConcrete), ParseError);
  CHECK_THROWS_AS(parse_sql("INSERT INTO t VALUES ( 1 )", ParseMode::kConcrete),
                  ParseError);
  CHECK_THROWS_AS(parse_sql("SELECT a WHERE b > 1 OR c > 2", ParseMode::kConcrete),
                  ParseError);
  CHECK_THROWS_AS(parse_sql("SELECT a ; DROP", ParseMode::kConcrete), ParseError);
  // nested subqueries exceed the dialect
  CHECK_THROWS_AS(
      parse_sql("SELECT a WHERE b > ( SELECT MAX ( b ) WHERE c > ( SELECT MIN ( c ) ) )",
                ParseMode::kConcrete),
      ParseError);
  // aggregate slots cannot take *
  CHECK_THROWS_AS(parse_sql("SELECT AGG0 ( * )", ParseMode::kTemplate), ParseError);
  try {
    parse_sql("SELECT a WHERE", ParseMode::kConcrete);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 14);  // end of input
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("keywords are reserved unless quoted") {
  CHECK_THROWS_AS(parse_sql("SELECT order", ParseMode::kConcrete), ParseError);
  const Query q = parse_sql("SELECT \"order\"", ParseMode::kConcrete);
  CHECK(render_sql(q) == "SELECT \"order\"");
}

TEST_CASE("string escaping round-trips") {
  const Query q = parse_sql("SELECT name WHERE city = 'O''Brien'", ParseMode::kConcrete);
  const Literal lit = std::get<Literal>(q.head.where[0].values[0]);
  CHECK(lit.text == "O'Brien");
  CHECK(lit.quoted);
  CHECK(render_sql(q) == "SELECT name WHERE city = 'O''Brien'");
}

TEST_CASE("substitution reproduces the worked grouped-count example") {
  const Query templ = parse_sql(kRule1Template, ParseMode::kTemplate);
  SlotBindings bindings;
  bindings.emplace(slot(SlotKind::kColumn, 0), std::string("locations"));
  bindings.emplace(slot(SlotKind::kColumn, 1), std::string("wins"));
  bindings.emplace(slot(SlotKind::kOp, 0), CompareOp::kGe);
  bindings.emplace(slot(SlotKind::kValue, 0), Literal{"2", false});
  const Query concrete = substitute_slots(templ, bindings);
  CHECK_FALSE(has_slots(concrete));
  CHECK(render_sql(concrete) ==
        "SELECT locations , COUNT ( * ) WHERE wins >= 2 GROUP BY locations");
  // substitution is shape-preserving: only the slot leaves changed
  CHECK(concrete.head.projections.size() == templ.head.projections.size());
  CHECK(concrete.head.where.size() == templ.head.where.size());
  CHECK(concrete.head.group_by.size() == templ.head.group_by.size());
}

TEST_CASE("substitution errors") {
  const Query templ = parse_sql(kRule1Template, ParseMode::kTemplate);
  SlotBindings missing;
  missing.emplace(slot(SlotKind::kColumn, 0), std::string("locations"));
  missing.emplace(slot(SlotKind::kColumn, 1), std::string("wins"));
  missing.emplace(slot(SlotKind::kOp, 0), CompareOp::kGe);
  CHECK_THROWS_AS(substitute_slots(templ, missing), UnboundSlotError);

  SlotBindings wrong_kind = missing;
  wrong_kind.emplace(slot(SlotKind::kValue, 0), std::string("2"));  // not a Literal
  CHECK_THROWS_AS(substitute_slots(templ, wrong_kind), BindingTypeError);

  SlotBindings op_between = missing;
  op_between[slot(SlotKind::kOp, 0)] = CompareOp::kBetween;  // arity change
  op_between.emplace(slot(SlotKind::kValue, 0), Literal{"2", false});
  CHECK_THROWS_AS(substitute_slots(templ, op_between), BindingTypeError);
}

TEST_CASE("substitution of a slot-free template is the identity") {
  const Query q = parse_sql("SELECT name WHERE wins > 3", ParseMode::kTemplate);
  CHECK(substitute_slots(q, {}) == q);
}

TEST_CASE("textual slot order and duplicates") {
  const Query q = parse_sql(kRule1Template, ParseMode::kTemplate);
  const std::vector<SlotName> slots = collect_slots(q);
  REQUIRE(slots.size() == 5);
  CHECK(slots[0] == slot(SlotKind::kColumn, 0));
  CHECK(slots[1] == slot(SlotKind::kColumn, 1));
  CHECK(slots[2] == slot(SlotKind::kOp, 0));
  CHECK(slots[3] == slot(SlotKind::kValue, 0));
  CHECK(slots[4] == slot(SlotKind::kColumn, 0));  // GROUP BY reuses COLUMN0
}

// ---------------------------------------------------------------------------
// Property test: a hand-rolled generator over the whole dialect.

namespace {

struct QueryGen {
  Rng& rng;
  bool template_mode;
  int next_slot[6] = {0, 0, 0, 0, 0, 0};

  SlotName fresh(SlotKind kind) {
    return SlotName{kind, next_slot[static_cast<int>(kind)]++};
  }

  bool coin(double p = 0.5) { return rng.bernoulli(p); }

  std::string identifier() {
    static const std::vector<std::string> pool = {
        "city",  "wins",       "year",   "first name", "O'Hara st",
        "order", "say \"hi\"", "points", "team",       "Height (m)"};
    return pool[rng.below(pool.size())];
  }

  SlotOr<std::string> column_name() {
    if (template_mode && coin(0.4)) return fresh(SlotKind::kColumn);
    return identifier();
  }

  ColumnRef column(bool allow_qualifier) {
    ColumnRef col;
    if (allow_qualifier && coin(0.15)) {
      col.table = template_mode && coin() ? SlotOr<std::string>{fresh(SlotKind::kTable)}
                                          : SlotOr<std::string>{identifier()};
    }
    col.name = column_name();
    return col;
  }

  SlotOr<AggFn> agg_fn() {
    if (template_mode && coin(0.4)) return fresh(SlotKind::kAgg);
    return kAllAggFns[rng.below(kAllAggFns.size())];
  }

  AggExpr agg(bool allow_qualifier) {
    AggExpr out;
    out.fn = agg_fn();
    if (is_slot(out.fn) || std::get<AggFn>(out.fn) != AggFn::kCount || coin()) {
      out.arg = column(allow_qualifier);
    }
    return out;
  }

  Operand operand(bool allow_qualifier) {
    if (coin(0.3)) return agg(allow_qualifier);
    return column(allow_qualifier);
  }

  ValueTerm value() {
    if (template_mode && coin(0.4)) return ValueTerm{fresh(SlotKind::kValue)};
    if (coin()) {
      return Literal{std::to_string(rng.below(2000)), false};
    }
    static const std::vector<std::string> texts = {"Bangkok", "New York", "O'Brien",
                                                   "100% sure", "plain"};
    return Literal{texts[rng.below(texts.size())], true};
  }

  Condition condition(bool allow_subquery, bool allow_qualifier) {
    Condition cond;
    cond.lhs = operand(allow_qualifier);
    const std::size_t pick = rng.below(allow_subquery ? 10 : 7);
    if (pick < 5) {  // single-value comparison
      if (template_mode && coin(0.4)) {
        cond.op = fresh(SlotKind::kOp);
      } else {
        cond.op = kComparisonOps[rng.below(kComparisonOps.size())];
      }
      cond.values.push_back(value());
    } else if (pick < 6) {  // BETWEEN
      cond.op = CompareOp::kBetween;
      cond.values.push_back(value());
      cond.values.push_back(value());
    } else if (pick < 7) {  // LIKE with a concrete pattern
      cond.op = CompareOp::kLike;
      cond.values.push_back(value());
    } else if (pick < 8) {  // scalar subquery comparison
      if (template_mode && coin(0.4)) {
        cond.op = fresh(SlotKind::kOp);
      } else {
        static const CompareOp scalar_ops[] = {CompareOp::kEq, CompareOp::kNe,
                                               CompareOp::kLt, CompareOp::kLe,
                                               CompareOp::kGt, CompareOp::kGe};
        cond.op = scalar_ops[rng.below(6)];
      }
      cond.subquery = Subquery{Box<SelectCore>(core(false, allow_qualifier))};
    } else {  // IN / NOT IN
      cond.op = coin() ? CompareOp::kIn : CompareOp::kNotIn;
      cond.subquery = Subquery{Box<SelectCore>(core(false, allow_qualifier))};
    }
    return cond;
  }

  SelectCore core(bool allow_subquery, bool allow_qualifier) {
    SelectCore out;
    const std::size_t n_proj = 1 + rng.below(3);
    for (std::size_t i = 0; i < n_proj; ++i) {
      out.projections.push_back(operand(allow_qualifier));
    }
    if (allow_qualifier || coin(0.3)) {
      FromClause from;
      from.table = template_mode && coin() ? SlotOr<std::string>{fresh(SlotKind::kTable)}
                                           : SlotOr<std::string>{identifier()};
      if (allow_qualifier) {
        JoinClause join;
        join.table = identifier();
        join.left = column(true);
        join.right = column(true);
        from.join = std::move(join);
      }
      out.from = std::move(from);
    }
    const std::size_t n_where = rng.below(3);
    for (std::size_t i = 0; i < n_where; ++i) {
      out.where.push_back(condition(allow_subquery, allow_qualifier));
    }
    if (coin(0.4)) {
      out.group_by.push_back(column(allow_qualifier));
      if (coin()) out.having.push_back(condition(allow_subquery, allow_qualifier));
    }
    if (coin(0.4)) {
      OrderItem item;
      item.key = operand(allow_qualifier);
      if (coin(0.8)) {
        if (template_mode && coin(0.4)) {
          item.dir = SlotOr<SortDir>{fresh(SlotKind::kSc)};
        } else {
          item.dir = coin() ? SortDir::kAsc : SortDir::kDesc;
        }
      }
      out.order_by.push_back(std::move(item));
    }
    if (coin(0.3)) {
      if (template_mode && coin(0.4)) {
        out.limit = ValueTerm{fresh(SlotKind::kValue)};
      } else {
        out.limit = ValueTerm{Literal{std::to_string(1 + rng.below(9)), false}};
      }
    }
    return out;
  }

  Query query() {
    Query q;
    const bool joined = coin(0.1);
    q.head = core(!joined, joined);
    if (!joined && coin(0.25)) {
      static const SetOpKind kinds[] = {SetOpKind::kIntersect, SetOpKind::kUnion,
                                        SetOpKind::kExcept};
      q.set_op = SetOpArm{kinds[rng.below(3)], core(true, false)};
    }
    return q;
  }
};

}  // namespace

TEST_CASE("parse(render(q)) == q over randomly generated dialect queries") {
  for (const bool template_mode : {false, true}) {
    Rng rng(template_mode ? 11 : 7);
    for (int i = 0; i < 400; ++i) {
      QueryGen gen{rng, template_mode};
      const Query q = gen.query();
      const std::string text = render_sql(q);
      CAPTURE(text);
      Query reparsed;
      REQUIRE_NOTHROW(reparsed = parse_sql(
                          text, template_mode ? ParseMode::kTemplate
                                              : ParseMode::kConcrete));
      CHECK(reparsed == q);
      CHECK(render_sql(reparsed) == text);  // canonical form is a fixed point
    }
  }
}

TEST_CASE("set operation rendering") {
  const Query q = parse_sql(
      "SELECT a WHERE b > 5 INTERSECT SELECT a WHERE c = 'x'", ParseMode::kConcrete);
  REQUIRE(q.set_op.has_value());
  CHECK(q.set_op->kind == SetOpKind::kIntersect);
  CHECK(render_sql(q) == "SELECT a WHERE b > 5 INTERSECT SELECT a WHERE c = 'x'");
  // only one set operation fits the dialect
  CHECK_THROWS_AS(
      parse_sql("SELECT a INTERSECT SELECT b UNION SELECT c", ParseMode::kConcrete),
      ParseError);
}

TEST_CASE("join clause round-trips") {
  const char* text =
      "SELECT players . name FROM players JOIN teams ON players . team = teams . id "
      "WHERE teams . city = 'Oslo'";
  const Query q = parse_sql(text, ParseMode::kConcrete);
  REQUIRE(q.head.from.has_value());
  REQUIRE(q.head.from->join.has_value());
  CHECK(render_sql(q) == text);
}
