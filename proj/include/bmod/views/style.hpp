#pragma once

#include <array>
#include <string>
#include <string_view>

namespace bmod::views
{

/// Everything the scenario renderer draws. `floor` is an empty walkable cell;
/// `dead` marks a person who died, shown only when rendering a state.
enum class ElementKind { floor, wall, fire, person, dead, sign, door, exit };

inline constexpr std::array<ElementKind, 8> element_kinds = {
  ElementKind::floor, ElementKind::wall, ElementKind::fire, ElementKind::person,
  ElementKind::dead,  ElementKind::sign, ElementKind::door, ElementKind::exit};

std::string_view to_string(ElementKind kind) noexcept;

struct ElementStyle
{
  std::string fill;   ///< `#rrggbb`
  std::string glyph;  ///< short label drawn over the cell; may be empty
};

struct ViewStyle
{
  std::array<ElementStyle, element_kinds.size()> elements;
  int cell_size = 32;

  [[nodiscard]] const ElementStyle & of(ElementKind kind) const { return elements[static_cast<std::size_t>(kind)]; }
  [[nodiscard]] ElementStyle & of(ElementKind kind) { return elements[static_cast<std::size_t>(kind)]; }
};

ViewStyle default_style();

bool is_hex_color(std::string_view text) noexcept;

/// Layers a JSON override onto the defaults:
///   {"cell_size": 40, "elements": {"wall": {"fill": "#333333", "glyph": "#"}}}
/// Throws Error(invalid_style) for malformed JSON, unknown element names,
/// non-hex colors or a cell size outside 4..512.
ViewStyle style_from_json(std::string_view text);

}  // namespace bmod::views
