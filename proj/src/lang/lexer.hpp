#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bmod/diagnostic.hpp"

namespace bmod::lang::detail
{

enum class TokenKind { identifier, integer, string, lparen, rparen, lbrace, rbrace, comma, eof };

std::string_view describe(TokenKind kind) noexcept;

struct Token
{
  TokenKind kind = TokenKind::eof;
  std::string_view lexeme;  ///< raw source text
  std::string text;         ///< decoded string literal contents
  std::int64_t value = 0;   ///< integer value, saturated on overflow
  bool overflow = false;
  bool malformed = false;   ///< string with a reported escape or encoding error
  SourceSpan span;
};

/// Splits `source` into tokens, always ending with one eof token. Lexical
/// problems are appended to `diagnostics` and the offending bytes skipped.
std::vector<Token> tokenize(std::string_view source, Diagnostics & diagnostics);

}  // namespace bmod::lang::detail
