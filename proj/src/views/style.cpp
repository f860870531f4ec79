#include "bmod/views/style.hpp"

#include <cctype>

#include "bmod/error.hpp"
#include "json.hpp"

namespace bmod::views
{

std::string_view to_string(ElementKind kind) noexcept
{
  switch (kind) {
    case ElementKind::floor: return "floor";
    case ElementKind::wall: return "wall";
    case ElementKind::fire: return "fire";
    case ElementKind::person: return "person";
    case ElementKind::dead: return "dead";
    case ElementKind::sign: return "sign";
    case ElementKind::door: return "door";
    case ElementKind::exit: return "exit";
  }
  return "?";
}

ViewStyle default_style()
{
  ViewStyle s;
  s.of(ElementKind::floor) = {"#ffffff", ""};
  s.of(ElementKind::wall) = {"#4d4d4d", "W"};
  s.of(ElementKind::fire) = {"#ff6a00", "F"};
  s.of(ElementKind::person) = {"#1e64c8", "P"};
  s.of(ElementKind::dead) = {"#000000", "X"};
  s.of(ElementKind::sign) = {"#2e8b57", "S"};
  s.of(ElementKind::door) = {"#a0522d", "D"};
  s.of(ElementKind::exit) = {"#1a9e1a", "E"};
  return s;
}

bool is_hex_color(std::string_view text) noexcept
{
  if (text.size() != 7 || text[0] != '#') return false;
  for (char c : text.substr(1)) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

ViewStyle style_from_json(std::string_view text)
{
  ViewStyle style = default_style();
  try {
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_object()) throw Error(ErrorKind::invalid_style, "style must be a JSON object");
    for (const auto & [key, value] : doc.items()) {
      if (key == "cell_size") {
        const int size = value.get<int>();
        if (size < 4 || size > 512) {
          throw Error(ErrorKind::invalid_style, "cell_size must be within 4..512");
        }
        style.cell_size = size;
      } else if (key == "elements") {
        for (const auto & [name, entry] : value.items()) {
          ElementStyle * target = nullptr;
          for (auto kind : element_kinds) {
            if (to_string(kind) == name) target = &style.of(kind);
          }
          if (target == nullptr) throw Error(ErrorKind::invalid_style, "unknown element kind '" + name + "'");
          if (entry.contains("fill")) {
            auto fill = entry.at("fill").get<std::string>();
            if (!is_hex_color(fill)) {
              throw Error(ErrorKind::invalid_style, "fill of '" + name + "' is not a #rrggbb color: " + fill);
            }
            target->fill = std::move(fill);
          }
          if (entry.contains("glyph")) target->glyph = entry.at("glyph").get<std::string>();
        }
      } else {
        throw Error(ErrorKind::invalid_style, "unknown style key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorKind::invalid_style, std::string("malformed style: ") + e.what());
  }
  return style;
}

}  // namespace bmod::views
