#pragma once

#include <string>

#include "bmod/lang/scenario.hpp"

namespace bmod::lang
{

/// Canonical `.bmod` text: LF line endings, two-space indentation, one item
/// per line, items ordered by (y, x, kind). parse(serialize(s)) is
/// structurally equal to s.
std::string serialize(const Scenario & scenario);

/// Quoted string literal with `\"`, `\\`, `\n`, `\r`, `\t` escapes.
std::string quote(std::string_view text);

}  // namespace bmod::lang
