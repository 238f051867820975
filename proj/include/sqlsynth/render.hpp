#pragma once

#include <string>

#include "sqlsynth/ast.hpp"

namespace sqlsynth {

// Canonical single-line rendering: single spaces between tokens, parentheses
// space-separated, keywords uppercase, identifiers verbatim (double-quoted
// when they are not plain words or would collide with a keyword or slot
// token), values single-quoted when Literal.quoted.
std::string render_sql(const Query& query);

// True for identifiers that render without quotes.
bool is_plain_identifier(std::string_view name);

// True for strings that lex as a bare numeric token (-?digits[.digits]).
bool is_numeric_token(std::string_view text);

}  // namespace sqlsynth
