#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqlsynth/error.hpp"

namespace sqlsynth {

// ---------------------------------------------------------------------------
// Errors

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset)
      : Error(message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnboundSlotError : public Error {
 public:
  using Error::Error;
};

class BindingTypeError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Terminals

enum class AggFn { kMax, kMin, kCount, kAvg, kSum };
enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe, kLike, kBetween, kIn, kNotIn };
enum class SortDir { kAsc, kDesc };
enum class SetOpKind { kIntersect, kUnion, kExcept };

std::string_view to_sql(AggFn fn);
std::string_view to_sql(CompareOp op);
std::string_view to_sql(SortDir dir);
std::string_view to_sql(SetOpKind kind);

std::optional<AggFn> agg_from_sql(std::string_view token);
std::optional<CompareOp> op_from_sql(std::string_view token);
std::optional<SortDir> dir_from_sql(std::string_view token);

constexpr std::array<AggFn, 5> kAllAggFns = {AggFn::kMax, AggFn::kMin,
                                             AggFn::kCount, AggFn::kAvg,
                                             AggFn::kSum};

// Ops usable in a single-valued comparison (the ones an OP slot may carry).
constexpr std::array<CompareOp, 7> kComparisonOps = {
    CompareOp::kEq, CompareOp::kNe, CompareOp::kLt, CompareOp::kLe,
    CompareOp::kGt, CompareOp::kGe, CompareOp::kLike};

inline bool is_arithmetic(CompareOp op) {
  return op == CompareOp::kLt || op == CompareOp::kLe ||
         op == CompareOp::kGt || op == CompareOp::kGe ||
         op == CompareOp::kBetween;
}

// ---------------------------------------------------------------------------
// Slots

enum class SlotKind { kTable, kColumn, kValue, kAgg, kOp, kSc };

std::string_view slot_kind_name(SlotKind kind);

struct SlotName {
  SlotKind kind;
  int ordinal = 0;

  auto operator<=>(const SlotName&) const = default;

  std::string str() const;
  // Recognizes canonical slot tokens: TABLE0, COLUMN12, VALUE0, AGG0, OP0, SC1.
  static std::optional<SlotName> parse(std::string_view token);
};

// A leaf that is either a concrete terminal or a slot placeholder.
template <typename T>
using SlotOr = std::variant<T, SlotName>;

template <typename T>
bool is_slot(const SlotOr<T>& v) {
  return std::holds_alternative<SlotName>(v);
}

template <typename T>
const SlotName* get_slot(const SlotOr<T>& v) {
  return std::get_if<SlotName>(&v);
}

// ---------------------------------------------------------------------------
// Value-semantic box for the one recursive edge (conditions -> subquery).

template <typename T>
class Box {
 public:
  Box() : ptr_(std::make_unique<T>()) {}
  explicit Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&& other) noexcept = default;
  Box& operator=(const Box& other) {
    ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&& other) noexcept = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

// ---------------------------------------------------------------------------
// AST
//
// The tree is the canonical form: rendering prints exactly what the tree
// holds (e.g. a query with an empty FROM renders without a FROM clause), so
// parse(render(t)) == t structurally for every well-formed tree.

struct Literal {
  std::string text;
  bool quoted = false;  // quoted values come from TEXT/DATE columns

  bool operator==(const Literal&) const = default;
};

using ValueTerm = SlotOr<Literal>;

struct ColumnRef {
  std::optional<SlotOr<std::string>> table;  // optional qualifier
  SlotOr<std::string> name;

  bool operator==(const ColumnRef&) const = default;
};

struct AggExpr {
  SlotOr<AggFn> fn;
  std::optional<ColumnRef> arg;  // nullopt renders as *

  bool operator==(const AggExpr&) const = default;
};

using Operand = std::variant<ColumnRef, AggExpr>;

struct SelectCore;

struct Subquery {
  Box<SelectCore> select;

  bool operator==(const Subquery&) const = default;
};

struct Condition {
  Operand lhs;
  SlotOr<CompareOp> op;
  std::vector<ValueTerm> values;    // one value; two for BETWEEN; none with rhs subquery
  std::optional<Subquery> subquery;

  bool operator==(const Condition&) const = default;
};

struct OrderItem {
  Operand key;
  std::optional<SlotOr<SortDir>> dir;

  bool operator==(const OrderItem&) const = default;
};

struct JoinClause {
  SlotOr<std::string> table;
  ColumnRef left;
  ColumnRef right;

  bool operator==(const JoinClause&) const = default;
};

struct FromClause {
  SlotOr<std::string> table;
  std::optional<JoinClause> join;

  bool operator==(const FromClause&) const = default;
};

struct SelectCore {
  std::vector<Operand> projections;  // never empty
  std::optional<FromClause> from;
  std::vector<Condition> where;      // AND-joined
  std::vector<ColumnRef> group_by;
  std::vector<Condition> having;
  std::vector<OrderItem> order_by;
  std::optional<ValueTerm> limit;

  bool operator==(const SelectCore&) const = default;
};

struct SetOpArm {
  SetOpKind kind;
  SelectCore select;

  bool operator==(const SetOpArm&) const = default;
};

struct Query {
  SelectCore head;
  std::optional<SetOpArm> set_op;

  bool operator==(const Query&) const = default;
};

// ---------------------------------------------------------------------------
// Slot traversal and substitution

// Visits every slot in textual order (projections, from, where, group by,
// having, order by, limit, then the set-op arm), including repeats.
void visit_slots(const Query& query, const std::function<void(const SlotName&)>& fn);

std::vector<SlotName> collect_slots(const Query& query);
bool has_slots(const Query& query);

// Terminal payloads a slot can be bound to. std::string covers TABLE and
// COLUMN slots (the identifier that replaces them).
using SlotValue = std::variant<std::string, Literal, AggFn, CompareOp, SortDir>;
using SlotBindings = std::map<SlotName, SlotValue>;

// Replaces every slot leaf with its bound terminal; tree shape is untouched.
// Throws UnboundSlotError for a slot without a binding and BindingTypeError
// when the payload does not fit the slot kind (an OP slot additionally
// rejects BETWEEN / IN / NOT IN, which would change condition arity).
Query substitute_slots(const Query& templ, const SlotBindings& bindings);

}  // namespace sqlsynth
