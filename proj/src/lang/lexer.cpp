#include "lexer.hpp"

#include "bmod/lang/parser.hpp"

namespace bmod::lang::detail
{

std::string_view describe(TokenKind kind) noexcept
{
  switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::integer: return "integer";
    case TokenKind::string: return "string";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::comma: return "','";
    case TokenKind::eof: return "end of input";
  }
  return "token";
}

namespace
{

constexpr std::int64_t int_limit = 2147483647;

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Length of the well-formed UTF-8 sequence starting at `s[i]`, or 0.
std::size_t utf8_length(std::string_view s, std::size_t i)
{
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  std::uint32_t min = 0;
  std::uint32_t cp = 0;
  if (b0 < 0x80) return 1;
  if ((b0 & 0xE0) == 0xC0) { len = 2; min = 0x80; cp = b0 & 0x1F; }
  else if ((b0 & 0xF0) == 0xE0) { len = 3; min = 0x800; cp = b0 & 0x0F; }
  else if ((b0 & 0xF8) == 0xF0) { len = 4; min = 0x10000; cp = b0 & 0x07; }
  else return 0;
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

class Lexer
{
public:
  Lexer(std::string_view source, Diagnostics & diagnostics) : src_(source), diagnostics_(diagnostics) {}

  std::vector<Token> run()
  {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) {
        Token eof;
        eof.kind = TokenKind::eof;
        eof.span = span_from(pos_);
        tokens.push_back(std::move(eof));
        return tokens;
      }
      if (auto token = next()) {
        tokens.push_back(std::move(*token));
      }
    }
  }

private:
  SourceSpan span_from(std::size_t begin) const
  {
    return SourceSpan{begin, pos_, line_at(begin), column_at(begin)};
  }

  // Line/column are tracked incrementally for the current position; tokens
  // record them at their start.
  std::uint32_t line_at(std::size_t) const { return token_line_; }
  std::uint32_t column_at(std::size_t) const { return token_column_; }

  void advance()
  {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void mark()
  {
    token_line_ = line_;
    token_column_ = column_;
  }

  void skip_trivia()
  {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          advance();
        }
      } else {
        return;
      }
    }
  }

  void report(std::string_view code, std::string message, SourceSpan span)
  {
    diagnostics_.push_back(Diagnostic{Severity::error, std::string(code), std::move(message), {}, span, true});
  }

  std::optional<Token> next()
  {
    mark();
    const std::size_t begin = pos_;
    const char c = src_[pos_];
    Token token;

    auto single = [&](TokenKind kind) {
      advance();
      token.kind = kind;
      token.lexeme = src_.substr(begin, 1);
      token.span = span_from(begin);
      return token;
    };

    switch (c) {
      case '(': return single(TokenKind::lparen);
      case ')': return single(TokenKind::rparen);
      case '{': return single(TokenKind::lbrace);
      case '}': return single(TokenKind::rbrace);
      case ',': return single(TokenKind::comma);
      case '"': return string_literal();
      default: break;
    }

    if (is_digit(c)) {
      std::int64_t value = 0;
      bool overflow = false;
      while (pos_ < src_.size() && is_digit(src_[pos_])) {
        if (!overflow) {
          value = value * 10 + (src_[pos_] - '0');
          if (value > int_limit) {
            overflow = true;
            value = int_limit;
          }
        }
        advance();
      }
      token.kind = TokenKind::integer;
      token.lexeme = src_.substr(begin, pos_ - begin);
      token.value = value;
      token.overflow = overflow;
      token.span = span_from(begin);
      if (overflow) {
        report(parse_code::integer_overflow, "integer literal exceeds " + std::to_string(int_limit), token.span);
      }
      return token;
    }

    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) {
        advance();
      }
      token.kind = TokenKind::identifier;
      token.lexeme = src_.substr(begin, pos_ - begin);
      token.span = span_from(begin);
      return token;
    }

    // Run of bytes that cannot start a token; reported once.
    while (pos_ < src_.size()) {
      const char d = src_[pos_];
      if (d == ' ' || d == '\t' || d == '\r' || d == '\n' || d == '#' || d == '"' || d == '(' || d == ')' ||
          d == '{' || d == '}' || d == ',' || is_ident_char(d)) {
        break;
      }
      advance();
    }
    report(parse_code::invalid_char, "unexpected character(s) in input", span_from(begin));
    return std::nullopt;
  }

  Token string_literal()
  {
    const std::size_t begin = pos_;
    Token token;
    token.kind = TokenKind::string;
    advance();  // opening quote
    bool closed = false;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '"') {
        advance();
        closed = true;
        break;
      }
      if (c == '\n' || c == '\r') {
        break;
      }
      if (c == '\\') {
        const std::size_t escape_at = pos_;
        advance();
        if (pos_ >= src_.size()) {
          break;
        }
        const char e = src_[pos_];
        switch (e) {
          case '"': token.text.push_back('"'); break;
          case '\\': token.text.push_back('\\'); break;
          case 'n': token.text.push_back('\n'); break;
          case 'r': token.text.push_back('\r'); break;
          case 't': token.text.push_back('\t'); break;
          default: {
            SourceSpan span{escape_at, escape_at + 1, token_line_, token_column_};
            report(parse_code::invalid_escape, "unknown escape sequence in string", span);
            token.malformed = true;
            if (e == '\n' || e == '\r') {
              continue;
            }
          }
        }
        advance();
        continue;
      }
      const std::size_t len = utf8_length(src_, pos_);
      if (len == 0) {
        SourceSpan span{pos_, pos_ + 1, token_line_, token_column_};
        report(parse_code::invalid_utf8, "string literal is not valid UTF-8", span);
        token.malformed = true;
        advance();
        continue;
      }
      token.text.append(src_.substr(pos_, len));
      for (std::size_t k = 0; k < len; ++k) {
        advance();
      }
    }
    token.lexeme = src_.substr(begin, pos_ - begin);
    token.span = span_from(begin);
    if (!closed) {
      report(parse_code::unterminated_string, "string literal is not terminated", token.span);
    }
    return token;
  }

  std::string_view src_;
  Diagnostics & diagnostics_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t column_ = 1;
  std::uint32_t token_line_ = 1;
  std::uint32_t token_column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, Diagnostics & diagnostics)
{
  return Lexer(source, diagnostics).run();
}

}  // namespace bmod::lang::detail
