#pragma once

#include <map>
#include <string>
#include <variant>

#include "sqlsynth/ast.hpp"

namespace sqlsynth {

// How a bound VALUE literal was constructed; groundedness checks use this to
// know what to verify the literal against.
enum class ValueOrigin { kCell, kCountThreshold, kLimitCount, kLikePattern };

std::string_view value_origin_name(ValueOrigin origin);

struct BoundTable {
  std::string table_id;
  std::string name;
};

struct BoundColumn {
  int index = -1;
  std::string name;
};

struct BoundValue {
  Literal literal;
  ValueOrigin origin = ValueOrigin::kCell;
  int column_index = -1;  // grounding column for kCell / kLikePattern
  std::string base_cell;  // the cell a kLikePattern wraps
};

struct BoundAgg {
  AggFn fn = AggFn::kCount;
  std::string phrase;
};

struct BoundOp {
  CompareOp op = CompareOp::kEq;
  std::string phrase;
};

struct BoundDir {
  SortDir dir = SortDir::kAsc;
  std::string phrase;
};

using BoundTerm =
    std::variant<BoundTable, BoundColumn, BoundValue, BoundAgg, BoundOp, BoundDir>;

struct Binding {
  std::map<SlotName, BoundTerm> slots;

  // Terminal map for substitute_slots.
  SlotBindings to_slot_bindings() const;

  // Natural-language surface form: the identifier or literal verbatim, the
  // sampled lexicon phrase for AGG/OP/SC. Throws UnboundSlotError.
  std::string surface(const SlotName& slot) const;
};

struct SynthExample {
  std::string example_id;
  std::string question;
  std::string sql;               // canonical concrete rendering
  std::string table_id;
  std::string rule_id;
  Binding binding;
  std::map<int, std::string> labels;  // every column index -> SSP label
};

}  // namespace sqlsynth
