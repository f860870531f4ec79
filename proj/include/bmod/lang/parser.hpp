#pragma once

#include <optional>
#include <string_view>

#include "bmod/diagnostic.hpp"
#include "bmod/lang/scenario.hpp"

namespace bmod::lang
{

/// Parse rule codes.
namespace parse_code
{
inline constexpr std::string_view unexpected_token = "PARSE_UNEXPECTED_TOKEN";
inline constexpr std::string_view unclosed_paren = "PARSE_UNCLOSED_PAREN";
inline constexpr std::string_view unclosed_brace = "PARSE_UNCLOSED_BRACE";
inline constexpr std::string_view unterminated_string = "PARSE_UNTERMINATED_STRING";
inline constexpr std::string_view invalid_escape = "PARSE_INVALID_ESCAPE";
inline constexpr std::string_view invalid_utf8 = "PARSE_INVALID_UTF8";
inline constexpr std::string_view invalid_char = "PARSE_INVALID_CHAR";
inline constexpr std::string_view integer_overflow = "PARSE_INT_OVERFLOW";
inline constexpr std::string_view bad_dimension = "PARSE_BAD_DIMENSION";
inline constexpr std::string_view bad_direction = "PARSE_BAD_DIRECTION";
inline constexpr std::string_view empty_name = "PARSE_EMPTY_NAME";
inline constexpr std::string_view too_many_errors = "PARSE_TOO_MANY_ERRORS";
}  // namespace parse_code

/// Largest accepted room side and area; keeps lowering and simulation bounded.
inline constexpr std::int64_t max_room_side = 4096;
inline constexpr std::int64_t max_room_area = std::int64_t{1} << 20;

struct ParseResult
{
  std::optional<Scenario> scenario;  ///< set iff `diagnostics` has no errors
  Diagnostics diagnostics;

  [[nodiscard]] bool ok() const noexcept { return scenario.has_value(); }
};

/// Parses `.bmod` text. Total: never throws on any byte sequence and always
/// terminates; every diagnostic carries a span inside the input.
ParseResult parse(std::string_view text);

}  // namespace bmod::lang
