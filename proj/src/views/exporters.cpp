#include "bmod/views/exporters.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "bmod/error.hpp"
#include "bmod/lang/doors.hpp"

namespace bmod::views
{

namespace
{

// Quoted DOT identifier.
std::string dot_id(std::string_view text)
{
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

// Text inside a record label: the record syntax characters need escaping on
// top of the quoted-string rules.
std::string record_text(std::string_view text)
{
  std::string out;
  for (char c : text) {
    switch (c) {
      case '{': case '}': case '|': case '<': case '>': case ' ':
        out.push_back('\\');
        out.push_back(c);
        break;
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string type_name(const meta::MetaAttribute & a)
{
  if (a.kind != meta::ValueKind::enumeration) return std::string(meta::to_string(a.kind));
  std::string out = "enum:";
  for (std::size_t i = 0; i < a.enum_literals.size(); ++i) {
    if (i > 0) out += '|';
    out += a.enum_literals[i];
  }
  return out;
}

std::string bounds_text(const meta::Multiplicity & m)
{
  return std::to_string(m.lower) + ".." + meta::format_bound(m.upper);
}

std::string csv_field(const std::string & text)
{
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::string xml_escape(std::string_view text)
{
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string export_class_diagram(const meta::MetaModel & mm)
{
  std::ostringstream out;
  out << "digraph " << dot_id(mm.name()) << " {\n";
  out << "  graph [rankdir=BT, fontname=\"Helvetica\"];\n";
  out << "  node [shape=record, fontname=\"Helvetica\", fontsize=10];\n";
  out << "  edge [fontname=\"Helvetica\", fontsize=9];\n";

  for (const auto & cls : mm.classes()) {
    std::string label = "{" + record_text(cls.is_abstract ? "<<abstract>> " + cls.name : cls.name) + "|";
    for (const auto & a : cls.attributes) {
      std::string line = a.name + " : " + type_name(a) + " [" + bounds_text(a.bounds) + "]";
      if (a.default_value) line += " = " + meta::literal_to_string(*a.default_value);
      label += record_text(line) + "\\l";
    }
    label += "|";
    for (const auto & op : cls.operations) {
      std::string line = op.name + "(";
      for (std::size_t i = 0; i < op.parameters.size(); ++i) {
        if (i > 0) line += ", ";
        line += op.parameters[i];
      }
      label += record_text(line + ")") + "\\l";
    }
    label += "}";
    out << "  " << dot_id(cls.name) << " [label=\"" << label << "\"";
    if (cls.is_abstract) out << ", style=dashed";
    out << "];\n";
  }

  for (const auto & cls : mm.classes()) {
    if (cls.supertype) {
      out << "  " << dot_id(cls.name) << " -> " << dot_id(*cls.supertype)
          << " [arrowhead=empty, style=solid, tooltip=\"inheritance\"];\n";
    }
  }
  for (const auto & cls : mm.classes()) {
    for (const auto & r : cls.references) {
      const std::string label = dot_id(r.name + " " + bounds_text(r.bounds));
      out << "  " << dot_id(cls.name) << " -> " << dot_id(r.target) << " [label=" << label;
      if (r.containment) {
        out << ", dir=both, arrowtail=diamond, arrowhead=open, tooltip=\"containment\"];\n";
      } else {
        out << ", arrowhead=open, style=dashed, tooltip=\"reference\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_spreadsheet(const meta::MetaModel & mm)
{
  using Row = std::vector<std::string>;
  std::vector<Row> rows;
  for (const auto & cls : mm.classes()) {
    if (cls.attributes.empty() && cls.references.empty()) {
      rows.push_back({cls.name, "", "", "", "", "", ""});
      continue;
    }
    for (const auto & a : cls.attributes) {
      rows.push_back({cls.name, a.name, "attribute", type_name(a), std::to_string(a.bounds.lower),
                      meta::format_bound(a.bounds.upper),
                      a.default_value ? meta::literal_to_string(*a.default_value) : ""});
    }
    for (const auto & r : cls.references) {
      rows.push_back({cls.name, r.name, r.containment ? "containment" : "reference", r.target,
                      std::to_string(r.bounds.lower), meta::format_bound(r.bounds.upper), ""});
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row & a, const Row & b) { return std::tie(a[0], a[1]) < std::tie(b[0], b[1]); });

  std::string out = "class,feature,kind,type,lower,upper,default\r\n";
  for (const auto & row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

namespace
{

constexpr int margin = 16;
constexpr int label_height = 18;
constexpr int room_gap = 24;

struct RoomBox
{
  const lang::RoomDecl * decl = nullptr;
  int x = 0;
  int y = 0;  ///< top-left of the grid, below the room label
};

void check_state(const lang::Scenario & scenario, const sim::SimulationState & state)
{
  if (!state.plan) throw Error(ErrorKind::state_mismatch, "simulation state carries no floor plan");
  const auto & rooms = state.plan->rooms();
  std::size_t flat = 0;
  for (std::size_t f = 0; f < scenario.floors.size(); ++f) {
    for (const auto & room : scenario.floors[f].rooms) {
      if (flat >= rooms.size() || rooms[flat].name != room.name || rooms[flat].width != room.width ||
          rooms[flat].height != room.height || rooms[flat].floor != f) {
        throw Error(ErrorKind::state_mismatch,
                    "simulation state does not belong to this scenario (room '" + room.name + "' differs)");
      }
      ++flat;
    }
  }
  if (flat != rooms.size()) {
    throw Error(ErrorKind::state_mismatch, "simulation state has rooms the scenario does not declare");
  }
}

}  // namespace

std::string render_scenario(const lang::Scenario & scenario, const sim::SimulationState * state,
                            const ViewStyle & style)
{
  if (state != nullptr) check_state(scenario, *state);
  const int cs = style.cell_size;

  // Layout: floors stacked top to bottom, rooms of a floor left to right.
  std::vector<RoomBox> boxes;
  std::vector<std::size_t> floor_offset;
  std::vector<int> floor_label_y;
  int width = 2 * margin;
  int cursor_y = margin;
  for (const auto & floor : scenario.floors) {
    floor_offset.push_back(boxes.size());
    floor_label_y.push_back(cursor_y + label_height - 4);
    int x = margin;
    std::int64_t tallest = 0;
    for (const auto & room : floor.rooms) {
      boxes.push_back({&room, x, cursor_y + 2 * label_height});
      x += static_cast<int>(room.width) * cs + room_gap;
      tallest = std::max(tallest, room.height);
    }
    width = std::max(width, x - room_gap + margin);
    cursor_y += 2 * label_height + static_cast<int>(tallest) * cs + room_gap;
  }
  const int height = std::max(cursor_y - room_gap + margin, 2 * margin);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  if (state != nullptr) out << "  <desc>tick " << state->tick << "</desc>\n";

  for (std::size_t f = 0; f < scenario.floors.size(); ++f) {
    out << "  <text class=\"floor-label\" x=\"" << margin << "\" y=\"" << floor_label_y[f]
        << "\" font-size=\"14\" font-weight=\"bold\">" << xml_escape(scenario.floors[f].name) << "</text>\n";
  }

  for (std::size_t flat = 0; flat < boxes.size(); ++flat) {
    const auto & box = boxes[flat];
    const auto & room = *box.decl;
    const auto w = room.width;
    const auto h = room.height;
    const auto cells = static_cast<std::size_t>(w * h);
    std::vector<bool> wall(cells), fire(cells);
    std::vector<std::string> glyphs(cells);
    std::vector<std::string> glyph_fill(cells);
    auto slot = [&](const lang::Coord & c) -> std::optional<std::size_t> {
      if (c.x < 0 || c.y < 0 || c.x >= w || c.y >= h) return std::nullopt;
      return static_cast<std::size_t>(c.y * w + c.x);
    };
    auto add_glyph = [&](std::size_t i, ElementKind kind) {
      glyphs[i] += style.of(kind).glyph;
      if (glyph_fill[i].empty()) glyph_fill[i] = style.of(kind).fill;
    };

    for (const auto & item : room.items) {
      const auto i = slot(item.at);
      if (!i) continue;
      switch (item.kind) {
        case lang::ItemKind::wall: wall[*i] = true; break;
        case lang::ItemKind::fire:
          if (state == nullptr) fire[*i] = true;
          break;
        default: break;
      }
    }
    for (const auto & item : room.items) {
      const auto i = slot(item.at);
      if (!i) continue;
      if (item.kind == lang::ItemKind::door) add_glyph(*i, item.exit ? ElementKind::exit : ElementKind::door);
    }
    for (const auto & item : room.items) {
      const auto i = slot(item.at);
      if (i && item.kind == lang::ItemKind::sign) add_glyph(*i, ElementKind::sign);
    }
    if (state == nullptr) {
      for (const auto & item : room.items) {
        const auto i = slot(item.at);
        if (i && item.kind == lang::ItemKind::person) add_glyph(*i, ElementKind::person);
      }
    } else {
      const auto offset = state->plan->rooms()[flat].offset;
      for (std::size_t i = 0; i < cells; ++i) fire[i] = state->burning[offset + i];
      for (const auto & p : state->people) {
        if (p.status == sim::PersonStatus::evacuated) continue;
        const auto at = state->plan->cell_at(p.cell);
        if (at.room != flat) continue;
        add_glyph(static_cast<std::size_t>(at.y * w + at.x),
                  p.status == sim::PersonStatus::dead ? ElementKind::dead : ElementKind::person);
      }
    }

    out << "  <g class=\"room\" id=\"room-" << flat << "\" data-name=\"" << xml_escape(room.name) << "\">\n";
    out << "    <text class=\"room-label\" x=\"" << box.x << "\" y=\"" << box.y - 5 << "\" font-size=\"12\">"
        << xml_escape(room.name) << "</text>\n";
    for (std::int64_t y = 0; y < h; ++y) {
      for (std::int64_t x = 0; x < w; ++x) {
        const auto i = static_cast<std::size_t>(y * w + x);
        const ElementKind kind = wall[i] ? ElementKind::wall : fire[i] ? ElementKind::fire : ElementKind::floor;
        const char * css = kind == ElementKind::wall ? "wall" : kind == ElementKind::fire ? "fire" : "cell";
        const auto px = box.x + static_cast<int>(x) * cs;
        const auto py = box.y + static_cast<int>(y) * cs;
        out << "    <rect class=\"" << css << "\" x=\"" << px << "\" y=\"" << py << "\" width=\"" << cs
            << "\" height=\"" << cs << "\" fill=\"" << style.of(kind).fill << "\" stroke=\"#999999\"/>\n";
        const std::string & glyph = wall[i] ? style.of(ElementKind::wall).glyph : glyphs[i];
        if (glyph.empty()) continue;
        const std::string & fill = wall[i] ? std::string("#ffffff") : glyph_fill[i];
        out << "    <text class=\"glyph\" x=\"" << px + cs / 2 << "\" y=\"" << py + cs / 2 + cs / 6
            << "\" font-size=\"" << cs / 2 << "\" text-anchor=\"middle\" fill=\"" << fill << "\">"
            << xml_escape(glyph) << "</text>\n";
      }
    }
    out << "  </g>\n";
  }

  // Door pairs as dashed connectors, each pair once.
  auto center = [&](const lang::DoorRef & d) {
    const auto flat = floor_offset[d.room.floor] + d.room.room;
    const auto & at = boxes[flat].decl->items[d.item].at;
    return std::pair{boxes[flat].x + static_cast<int>(at.x) * cs + cs / 2,
                     boxes[flat].y + static_cast<int>(at.y) * cs + cs / 2};
  };
  auto key = [&](const lang::DoorRef & d) { return std::tuple{d.room.floor, d.room.room, d.item}; };
  for (const auto & link : lang::pair_doors(scenario)) {
    if (link.status != lang::DoorStatus::paired || !link.counterpart) continue;
    if (!(key(link.door) < key(*link.counterpart))) continue;
    const auto [x1, y1] = center(link.door);
    const auto [x2, y2] = center(*link.counterpart);
    out << "  <line class=\"door-link\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
        << "\" stroke=\"" << style.of(ElementKind::door).fill << "\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace bmod::views
