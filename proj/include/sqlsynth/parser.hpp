#pragma once

#include <string>
#include <string_view>

#include "sqlsynth/ast.hpp"

namespace sqlsynth {

// TEMPLATE queries may contain slot tokens (COLUMN0, OP1, ...); in CONCRETE
// mode such tokens are a parse error.
enum class ParseMode { kTemplate, kConcrete };

// Parses one query of the template dialect:
//   SELECT list [FROM t [JOIN t ON a = b]] [WHERE conds] [GROUP BY cols]
//   [HAVING conds] [ORDER BY items] [LIMIT n] [set-op SELECT ...]
// with at most one set operation and one level of subquery nesting.
// Keywords are matched case-insensitively; identifiers may be double-quoted.
// Throws ParseError (with character offset) for anything outside the dialect.
Query parse_sql(std::string_view text, ParseMode mode);

bool is_reserved_word(std::string_view word);

}  // namespace sqlsynth
