#include "sqlsynth/parser.hpp"

#include <cctype>
#include <unordered_set>

namespace sqlsynth {

namespace {

std::string upper_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

const std::unordered_set<std::string>& reserved_words() {
  static const std::unordered_set<std::string> words = {
      "SELECT", "FROM", "WHERE", "GROUP", "BY", "HAVING", "ORDER", "LIMIT",
      "AND", "OR", "NOT", "IN", "LIKE", "BETWEEN", "INTERSECT", "UNION",
      "EXCEPT", "JOIN", "ON", "AS", "ASC", "DESC", "MAX", "MIN", "COUNT",
      "AVG", "SUM"};
  return words;
}

enum class TokKind { kWord, kQuotedIdent, kString, kNumber, kPunct, kEnd };

struct Token {
  TokKind kind;
  std::string text;    // unescaped content for strings / quoted identifiers
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      tokens.push_back(next());
    }
    tokens.push_back({TokKind::kEnd, "", text_.size()});
    return tokens;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  Token next() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '\'') return quoted(TokKind::kString, '\'');
    if (c == '"') return quoted(TokKind::kQuotedIdent, '"');
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      return number(start);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return {TokKind::kWord, std::string(text_.substr(start, pos_ - start)), start};
    }
    // operators and punctuation
    if (c == '<' || c == '>' || c == '!') {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '=' || (c == '<' && text_[pos_] == '>'))) {
        ++pos_;
      }
      std::string op(text_.substr(start, pos_ - start));
      if (op == "!") throw ParseError("stray '!'", start);
      return {TokKind::kPunct, op == "<>" ? "!=" : op, start};
    }
    if (c == '=' || c == '(' || c == ')' || c == ',' || c == '.' || c == '*') {
      ++pos_;
      return {TokKind::kPunct, std::string(1, c), start};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  Token quoted(TokKind kind, char delim) {
    const std::size_t start = pos_;
    ++pos_;
    std::string content;
    while (pos_ < text_.size()) {
      if (text_[pos_] == delim) {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == delim) {
          content += delim;
          pos_ += 2;
          continue;
        }
        ++pos_;
        return {kind, content, start};
      }
      content += text_[pos_++];
    }
    throw ParseError("unterminated quoted token", start);
  }

  Token number(std::size_t start) {
    if (text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("malformed number", start);
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    return {TokKind::kNumber, std::string(text_.substr(start, pos_ - start)), start};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, ParseMode mode)
      : tokens_(std::move(tokens)), mode_(mode) {}

  Query parse_query() {
    Query query;
    query.head = parse_core(0);
    if (peek().kind == TokKind::kWord) {
      const std::string kw = upper_ascii(peek().text);
      if (kw == "INTERSECT" || kw == "UNION" || kw == "EXCEPT") {
        advance();
        SetOpKind kind = kw == "INTERSECT" ? SetOpKind::kIntersect
                         : kw == "UNION"   ? SetOpKind::kUnion
                                           : SetOpKind::kExcept;
        query.set_op = SetOpArm{kind, parse_core(0)};
      }
    }
    expect_end();
    return query;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().offset);
  }

  bool at_keyword(std::string_view kw) const {
    return peek().kind == TokKind::kWord && upper_ascii(peek().text) == kw;
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail("expected " + std::string(kw));
    advance();
  }

  bool at_punct(std::string_view p) const {
    return peek().kind == TokKind::kPunct && peek().text == p;
  }

  void expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
    advance();
  }

  void expect_end() {
    if (peek().kind != TokKind::kEnd) fail("trailing input after query");
  }

  std::optional<SlotName> slot_here() const {
    if (peek().kind != TokKind::kWord) return std::nullopt;
    return SlotName::parse(peek().text);
  }

  SlotName take_slot(SlotKind expected) {
    const std::optional<SlotName> slot = slot_here();
    if (!slot) fail("expected slot token");
    if (mode_ == ParseMode::kConcrete) {
      fail("slot token " + slot->str() + " not allowed in a concrete query");
    }
    if (slot->kind != expected) {
      fail("slot " + slot->str() + " not valid here (need " +
           std::string(slot_kind_name(expected)) + ")");
    }
    advance();
    return *slot;
  }

  // An identifier usable as a table or column name: bare word, quoted
  // identifier, or (in template mode) a slot of the expected kind.
  SlotOr<std::string> parse_identifier(SlotKind slot_kind) {
    if (peek().kind == TokKind::kQuotedIdent) {
      std::string name = advance().text;
      if (name.empty()) fail("empty quoted identifier");
      return name;
    }
    if (peek().kind != TokKind::kWord) fail("expected identifier");
    if (slot_here()) return take_slot(slot_kind);
    if (is_reserved_word(peek().text)) {
      fail("keyword '" + peek().text + "' cannot be used as an identifier");
    }
    return advance().text;
  }

  ColumnRef parse_column() {
    ColumnRef col;
    if (peek(1).kind == TokKind::kPunct && peek(1).text == ".") {
      col.table = parse_identifier(SlotKind::kTable);
      expect_punct(".");
    }
    col.name = parse_identifier(SlotKind::kColumn);
    return col;
  }

  bool at_agg_head() const {
    if (peek().kind != TokKind::kWord) return false;
    if (!(peek(1).kind == TokKind::kPunct && peek(1).text == "(")) return false;
    if (agg_from_sql(peek().text)) return true;
    const std::optional<SlotName> slot = SlotName::parse(peek().text);
    return slot && slot->kind == SlotKind::kAgg;
  }

  Operand parse_operand(int depth) {
    (void)depth;
    if (at_agg_head()) {
      AggExpr agg;
      if (const std::optional<SlotName> slot = slot_here(); slot && slot->kind == SlotKind::kAgg) {
        agg.fn = take_slot(SlotKind::kAgg);
      } else {
        agg.fn = *agg_from_sql(advance().text);
      }
      expect_punct("(");
      if (at_punct("*")) {
        if (is_slot(agg.fn)) fail("an aggregate slot requires a column argument");
        if (std::get<AggFn>(agg.fn) != AggFn::kCount) fail("only COUNT may take *");
        advance();
      } else {
        agg.arg = parse_column();
      }
      expect_punct(")");
      return agg;
    }
    return parse_column();
  }

  ValueTerm parse_value() {
    if (peek().kind == TokKind::kNumber) return Literal{advance().text, false};
    if (peek().kind == TokKind::kString) return Literal{advance().text, true};
    if (const std::optional<SlotName> slot = slot_here(); slot && slot->kind == SlotKind::kValue) {
      return take_slot(SlotKind::kValue);
    }
    fail("expected a value (number, string, or VALUE slot)");
  }

  Subquery parse_subquery(int depth) {
    if (depth >= 1) fail("nested subqueries exceed the dialect");
    expect_punct("(");
    Subquery sub{Box<SelectCore>(parse_core(depth + 1))};
    expect_punct(")");
    return sub;
  }

  Condition parse_condition(int depth) {
    Condition cond;
    cond.lhs = parse_operand(depth);
    if (at_keyword("BETWEEN")) {
      advance();
      cond.op = CompareOp::kBetween;
      cond.values.push_back(parse_value());
      expect_keyword("AND");
      cond.values.push_back(parse_value());
      return cond;
    }
    if (at_keyword("NOT") || at_keyword("IN")) {
      if (at_keyword("NOT")) {
        advance();
        expect_keyword("IN");
        cond.op = CompareOp::kNotIn;
      } else {
        advance();
        cond.op = CompareOp::kIn;
      }
      cond.subquery = parse_subquery(depth);
      return cond;
    }
    if (const std::optional<SlotName> slot = slot_here(); slot && slot->kind == SlotKind::kOp) {
      cond.op = take_slot(SlotKind::kOp);
    } else if (peek().kind == TokKind::kPunct && op_from_sql(peek().text)) {
      cond.op = *op_from_sql(advance().text);
    } else if (at_keyword("LIKE")) {
      advance();
      cond.op = CompareOp::kLike;
    } else {
      fail("expected a comparison operator");
    }
    if (at_punct("(")) {
      cond.subquery = parse_subquery(depth);
    } else {
      cond.values.push_back(parse_value());
    }
    return cond;
  }

  std::vector<Condition> parse_condition_list(int depth) {
    std::vector<Condition> conds;
    conds.push_back(parse_condition(depth));
    while (at_keyword("AND")) {
      advance();
      conds.push_back(parse_condition(depth));
    }
    return conds;
  }

  SelectCore parse_core(int depth) {
    SelectCore core;
    expect_keyword("SELECT");
    core.projections.push_back(parse_operand(depth));
    while (at_punct(",")) {
      advance();
      core.projections.push_back(parse_operand(depth));
    }
    if (at_keyword("FROM")) {
      advance();
      FromClause from;
      from.table = parse_identifier(SlotKind::kTable);
      if (at_keyword("JOIN")) {
        advance();
        JoinClause join;
        join.table = parse_identifier(SlotKind::kTable);
        expect_keyword("ON");
        join.left = parse_column();
        expect_punct("=");
        join.right = parse_column();
        from.join = std::move(join);
      }
      core.from = std::move(from);
    }
    if (at_keyword("WHERE")) {
      advance();
      core.where = parse_condition_list(depth);
    }
    if (at_keyword("GROUP")) {
      advance();
      expect_keyword("BY");
      core.group_by.push_back(parse_column());
      while (at_punct(",")) {
        advance();
        core.group_by.push_back(parse_column());
      }
    }
    if (at_keyword("HAVING")) {
      advance();
      core.having = parse_condition_list(depth);
    }
    if (at_keyword("ORDER")) {
      advance();
      expect_keyword("BY");
      core.order_by.push_back(parse_order_item(depth));
      while (at_punct(",")) {
        advance();
        core.order_by.push_back(parse_order_item(depth));
      }
    }
    if (at_keyword("LIMIT")) {
      advance();
      if (peek().kind == TokKind::kNumber) {
        const Token& tok = advance();
        if (tok.text.find('.') != std::string::npos || tok.text[0] == '-') {
          throw ParseError("LIMIT requires a non-negative integer", tok.offset);
        }
        core.limit = ValueTerm{Literal{tok.text, false}};
      } else if (const std::optional<SlotName> slot = slot_here();
                 slot && slot->kind == SlotKind::kValue) {
        core.limit = ValueTerm{take_slot(SlotKind::kValue)};
      } else {
        fail("LIMIT requires a number or VALUE slot");
      }
    }
    return core;
  }

  OrderItem parse_order_item(int depth) {
    OrderItem item;
    item.key = parse_operand(depth);
    if (at_keyword("ASC") || at_keyword("DESC")) {
      item.dir = *dir_from_sql(advance().text);
    } else if (const std::optional<SlotName> slot = slot_here();
               slot && slot->kind == SlotKind::kSc) {
      item.dir = SlotOr<SortDir>{take_slot(SlotKind::kSc)};
    }
    return item;
  }

  std::vector<Token> tokens_;
  ParseMode mode_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_reserved_word(std::string_view word) {
  return reserved_words().contains(upper_ascii(word));
}

Query parse_sql(std::string_view text, ParseMode mode) {
  if (text.empty()) throw ParseError("empty query", 0);
  Parser parser(Lexer(text).run(), mode);
  return parser.parse_query();
}

}  // namespace sqlsynth
