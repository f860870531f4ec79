#include "bmod/lang/parser.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace bmod::lang
{

using detail::Token;
using detail::TokenKind;

namespace
{

constexpr std::size_t max_diagnostics = 100;

bool is_item_keyword(std::string_view word)
{
  return word == "wall" || word == "fire" || word == "person" || word == "sign" || word == "door";
}

SourceSpan join(SourceSpan a, SourceSpan b)
{
  return SourceSpan{a.begin, std::max(a.end, b.end), a.line, a.column};
}

class Parser
{
public:
  Parser(std::vector<Token> tokens, Diagnostics & diagnostics)
  : tokens_(std::move(tokens)), diagnostics_(diagnostics)
  {
  }

  Scenario scenario()
  {
    Scenario out;
    while (!at_eof() && !saturated()) {
      if (at_word("floor")) {
        out.floors.push_back(floor());
      } else {
        unexpected("'floor'");
        advance();
      }
    }
    return out;
  }

private:
  // Token access -----------------------------------------------------------

  const Token & cur() const { return tokens_[idx_]; }
  bool at(TokenKind kind) const { return cur().kind == kind; }
  bool at_eof() const { return at(TokenKind::eof); }
  bool at_word(std::string_view word) const { return at(TokenKind::identifier) && cur().lexeme == word; }

  const Token & advance()
  {
    const Token & t = tokens_[idx_];
    if (!at_eof()) {
      ++idx_;
    }
    return t;
  }

  bool saturated() const { return diagnostics_.size() >= max_diagnostics; }

  void report(std::string_view code, std::string message, SourceSpan span)
  {
    if (diagnostics_.size() == max_diagnostics) {
      diagnostics_.push_back(Diagnostic{Severity::error, std::string(parse_code::too_many_errors),
                                        "too many errors; giving up", {}, span, true});
    }
    if (saturated()) {
      return;
    }
    diagnostics_.push_back(Diagnostic{Severity::error, std::string(code), std::move(message), {}, span, true});
  }

  void unexpected(std::string_view expected)
  {
    const Token & t = cur();
    std::string found = t.kind == TokenKind::identifier || t.kind == TokenKind::integer
                          ? "'" + std::string(t.lexeme) + "'"
                          : std::string(detail::describe(t.kind));
    report(parse_code::unexpected_token, "expected " + std::string(expected) + ", found " + found, t.span);
  }

  bool expect(TokenKind kind)
  {
    if (at(kind)) {
      advance();
      return true;
    }
    unexpected(detail::describe(kind));
    return false;
  }

  bool expect_word(std::string_view word)
  {
    if (at_word(word)) {
      advance();
      return true;
    }
    unexpected("'" + std::string(word) + "'");
    return false;
  }

  std::optional<std::string> name()
  {
    if (!at(TokenKind::string)) {
      unexpected("a quoted name");
      return std::nullopt;
    }
    const Token & t = advance();
    if (t.text.empty() && !t.malformed) {
      report(parse_code::empty_name, "names must not be empty", t.span);
    }
    return t.text;
  }

  std::optional<std::int64_t> integer()
  {
    if (!at(TokenKind::integer)) {
      unexpected("an integer");
      return std::nullopt;
    }
    return advance().value;
  }

  // Grammar ----------------------------------------------------------------

  FloorDecl floor()
  {
    FloorDecl decl;
    decl.span = advance().span;
    if (auto n = name()) {
      decl.name = *n;
    } else {
      recover_top();
      return decl;
    }
    if (!at(TokenKind::lbrace)) {
      unexpected("'{'");
      recover_top();
      return decl;
    }
    const SourceSpan open = advance().span;
    while (!saturated()) {
      if (at(TokenKind::rbrace)) {
        decl.span = join(decl.span, advance().span);
        return decl;
      }
      if (at_eof() || at_word("floor")) {
        report(parse_code::unclosed_brace, "floor '" + decl.name + "' is missing its closing '}'", open);
        return decl;
      }
      if (at_word("room")) {
        decl.rooms.push_back(room());
      } else {
        unexpected("'room' or '}'");
        advance();
      }
    }
    return decl;
  }

  /// Skips to the next `floor` keyword.
  void recover_top()
  {
    while (!at_eof() && !at_word("floor")) {
      advance();
    }
  }

  /// Skips to a token that can continue a room or floor body.
  void recover_item()
  {
    while (!at_eof() && !at(TokenKind::rbrace) && !at_word("room") && !at_word("floor") &&
           !(at(TokenKind::identifier) && is_item_keyword(cur().lexeme))) {
      advance();
    }
  }

  /// Accepts both `3 x 1` and `3x1` (lexed as integer + identifier "x1").
  std::optional<std::int64_t> dimension_separator_and_height()
  {
    if (at_word("x")) {
      advance();
      return integer();
    }
    if (at(TokenKind::identifier) && cur().lexeme.size() > 1 && cur().lexeme[0] == 'x' &&
        std::all_of(cur().lexeme.begin() + 1, cur().lexeme.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const Token & t = advance();
      if (t.lexeme.size() > 11) {
        report(parse_code::integer_overflow, "integer literal exceeds 2147483647", t.span);
        return std::nullopt;
      }
      std::int64_t value = 0;
      for (char c : t.lexeme.substr(1)) {
        value = value * 10 + (c - '0');
      }
      if (value > 2147483647) {
        report(parse_code::integer_overflow, "integer literal exceeds 2147483647", t.span);
        return std::nullopt;
      }
      return value;
    }
    unexpected("'x'");
    return std::nullopt;
  }

  RoomDecl room()
  {
    RoomDecl decl;
    decl.span = advance().span;
    auto n = name();
    if (!n) {
      recover_item();
      return decl;
    }
    decl.name = *n;

    const SourceSpan dims_at = cur().span;
    const std::size_t dims_from = idx_;
    auto width = integer();
    auto height = width ? dimension_separator_and_height() : std::nullopt;
    if (!width || !height) {
      recover_item();
      return decl;
    }
    decl.width = *width;
    decl.height = *height;
    const SourceSpan dims = join(dims_at, tokens_[idx_ - 1].span);
    const bool overflowed =
      std::any_of(tokens_.begin() + static_cast<std::ptrdiff_t>(dims_from),
                  tokens_.begin() + static_cast<std::ptrdiff_t>(idx_), [](const Token & t) { return t.overflow; });
    if (overflowed) {
      decl.width = 1;
      decl.height = 1;
    } else if (decl.width < 1 || decl.height < 1 || decl.width > max_room_side || decl.height > max_room_side ||
        decl.width * decl.height > max_room_area) {
      report(parse_code::bad_dimension,
             "room dimensions must be between 1 and " + std::to_string(max_room_side) + " with area at most " +
               std::to_string(max_room_area),
             dims);
      decl.width = 1;
      decl.height = 1;
    }

    if (!at(TokenKind::lbrace)) {
      unexpected("'{'");
      recover_item();
      return decl;
    }
    const SourceSpan open = advance().span;
    while (!saturated()) {
      if (at(TokenKind::rbrace)) {
        decl.span = join(decl.span, advance().span);
        return decl;
      }
      if (at_eof() || at_word("room") || at_word("floor")) {
        report(parse_code::unclosed_brace, "room '" + decl.name + "' is missing its closing '}'", open);
        return decl;
      }
      if (at(TokenKind::identifier) && is_item_keyword(cur().lexeme)) {
        if (auto it = item()) {
          decl.items.push_back(std::move(*it));
        } else {
          recover_item();
        }
      } else {
        unexpected("an item ('wall', 'fire', 'person', 'sign', 'door') or '}'");
        advance();
        recover_item();
      }
    }
    return decl;
  }

  std::optional<Coord> coord()
  {
    if (!at(TokenKind::lparen)) {
      unexpected("'('");
      return std::nullopt;
    }
    const SourceSpan open = advance().span;
    auto x = integer();
    if (!x || !expect(TokenKind::comma)) {
      return std::nullopt;
    }
    auto y = integer();
    if (!y) {
      return std::nullopt;
    }
    if (!at(TokenKind::rparen)) {
      report(parse_code::unclosed_paren, "coordinate is missing its closing ')'", open);
      return std::nullopt;
    }
    advance();
    return Coord{*x, *y};
  }

  std::optional<Item> item()
  {
    const Token & keyword = advance();
    Item out;
    out.span = keyword.span;
    const std::string_view word = keyword.lexeme;

    if (word == "wall" || word == "fire") {
      out.kind = word == "wall" ? ItemKind::wall : ItemKind::fire;
    } else if (word == "sign") {
      out.kind = ItemKind::sign;
    } else {
      out.kind = word == "person" ? ItemKind::person : ItemKind::door;
      auto n = name();
      if (!n) {
        return std::nullopt;
      }
      out.name = *n;
    }

    if (!expect_word("at")) {
      return std::nullopt;
    }
    auto at_coord = coord();
    if (!at_coord) {
      return std::nullopt;
    }
    out.at = *at_coord;

    if (out.kind == ItemKind::sign) {
      if (!expect_word("facing")) {
        return std::nullopt;
      }
      if (!at(TokenKind::identifier)) {
        unexpected("a direction");
        return std::nullopt;
      }
      const Token & dir = advance();
      auto facing = direction_from_string(dir.lexeme);
      if (!facing) {
        report(parse_code::bad_direction,
               "unknown direction '" + std::string(dir.lexeme) + "' (expected north, south, east or west)", dir.span);
        return std::nullopt;
      }
      out.facing = *facing;
    }

    if (out.kind == ItemKind::door) {
      if (at_word("to")) {
        advance();
        auto target = name();
        if (!target) {
          return std::nullopt;
        }
        out.target = *target;
      }
      if (at_word("locked")) {
        advance();
        out.locked = true;
      }
      if (at_word("exit")) {
        advance();
        out.exit = true;
      }
    }
    out.span = join(out.span, tokens_[idx_ - 1].span);
    return out;
  }

  std::vector<Token> tokens_;
  std::size_t idx_ = 0;
  Diagnostics & diagnostics_;
};

}  // namespace

ParseResult parse(std::string_view text)
{
  ParseResult result;
  auto tokens = detail::tokenize(text, result.diagnostics);
  if (result.diagnostics.size() > max_diagnostics) {
    result.diagnostics.resize(max_diagnostics);
    result.diagnostics.push_back(Diagnostic{Severity::error, std::string(parse_code::too_many_errors),
                                            "too many errors; giving up", {}, result.diagnostics.back().span, true});
  }
  Scenario scenario = Parser(std::move(tokens), result.diagnostics).scenario();
  std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                   [](const Diagnostic & a, const Diagnostic & b) { return a.span.begin < b.span.begin; });
  if (!has_errors(result.diagnostics)) {
    result.scenario = std::move(scenario);
  }
  return result;
}

}  // namespace bmod::lang
