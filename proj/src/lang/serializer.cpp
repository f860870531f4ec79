#include "bmod/lang/serializer.hpp"

#include <sstream>

namespace bmod::lang
{

std::string quote(std::string_view text)
{
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string serialize(const Scenario & scenario)
{
  Scenario canonical = scenario;
  canonicalize(canonical);

  std::ostringstream out;
  for (const auto & floor : canonical.floors) {
    out << "floor " << quote(floor.name) << " {\n";
    for (const auto & room : floor.rooms) {
      out << "  room " << quote(room.name) << ' ' << room.width << " x " << room.height << " {\n";
      for (const auto & item : room.items) {
        out << "    " << to_string(item.kind);
        if (item.kind == ItemKind::person || item.kind == ItemKind::door) {
          out << ' ' << quote(item.name);
        }
        out << " at (" << item.at.x << ", " << item.at.y << ')';
        if (item.kind == ItemKind::sign) {
          out << " facing " << to_string(item.facing);
        }
        if (item.kind == ItemKind::door) {
          if (item.target) {
            out << " to " << quote(*item.target);
          }
          if (item.locked) {
            out << " locked";
          }
          if (item.exit) {
            out << " exit";
          }
        }
        out << '\n';
      }
      out << "  }\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace bmod::lang
