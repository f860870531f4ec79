#include "oracles.hpp"

#include <limits>
#include <map>
#include <stdexcept>

namespace bmod::test_support
{

std::vector<std::int64_t> brute_force_distances(const lang::RoomDecl & room, const std::vector<bool> & burning)
{
  const auto w = room.width;
  const auto h = room.height;
  const auto n = static_cast<std::size_t>(w * h);
  std::vector<bool> wall(n, false);
  std::vector<bool> exit(n, false);
  for (const auto & item : room.items) {
    const auto i = static_cast<std::size_t>(item.at.y * w + item.at.x);
    if (item.kind == lang::ItemKind::wall) wall[i] = true;
    if (item.kind == lang::ItemKind::door && item.exit && !item.locked) exit[i] = true;
  }
  auto open = [&](std::size_t i) { return !wall[i] && (burning.empty() || !burning[i]); };

  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, inf));
  for (std::size_t a = 0; a < n; ++a) {
    if (!open(a)) continue;
    d[a][a] = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (!open(b)) continue;
      const auto ax = static_cast<std::int64_t>(a) % w, ay = static_cast<std::int64_t>(a) / w;
      const auto bx = static_cast<std::int64_t>(b) % w, by = static_cast<std::int64_t>(b) / w;
      if (std::abs(ax - bx) + std::abs(ay - by) == 1) d[a][b] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  std::vector<std::int64_t> out(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t best = inf;
    for (std::size_t e = 0; e < n; ++e) {
      if (exit[e] && open(e)) best = std::min(best, d[i][e]);
    }
    if (best < inf) out[i] = best;
  }
  return out;
}

namespace
{

struct RoomInfo
{
  std::int64_t w, h;
  std::set<std::pair<std::int64_t, std::int64_t>> walls;
};

std::vector<RoomInfo> rooms_of(const lang::Scenario & s)
{
  std::vector<RoomInfo> out;
  for (const auto & f : s.floors) {
    for (const auto & r : f.rooms) {
      RoomInfo info{r.width, r.height, {}};
      for (const auto & item : r.items) {
        if (item.kind == lang::ItemKind::wall) info.walls.insert({item.at.x, item.at.y});
      }
      out.push_back(std::move(info));
    }
  }
  return out;
}

}  // namespace

CellSet declared_fires(const lang::Scenario & s)
{
  CellSet out;
  std::size_t index = 0;
  for (const auto & f : s.floors) {
    for (const auto & r : f.rooms) {
      for (const auto & item : r.items) {
        if (item.kind == lang::ItemKind::fire) out.insert({index, item.at.x, item.at.y});
      }
      ++index;
    }
  }
  return out;
}

CellSet spread_once(const lang::Scenario & s, const CellSet & burning)
{
  const auto rooms = rooms_of(s);
  CellSet out = burning;
  for (const auto & [room, x, y] : burning) {
    const auto & info = rooms[room];
    const std::pair<std::int64_t, std::int64_t> around[] = {{x, y - 1}, {x + 1, y}, {x, y + 1}, {x - 1, y}};
    for (const auto & [nx, ny] : around) {
      if (nx < 0 || ny < 0 || nx >= info.w || ny >= info.h) continue;
      if (info.walls.count({nx, ny})) continue;
      out.insert({room, nx, ny});
    }
  }
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string & text)
{
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_started = false;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
        if (i < text.size() && text[i] != ',' && text[i] != '\r' && text[i] != '\n') {
          throw std::runtime_error("characters after closing quote");
        }
        continue;
      }
      field.push_back(c);
      ++i;
      continue;
    }
    if (c == '"') {
      if (field_started || !field.empty()) throw std::runtime_error("quote inside unquoted field");
      quoted = true;
      field_started = true;
      ++i;
    } else if (c == ',') {
      end_field();
      ++i;
    } else if (c == '\r' || c == '\n') {
      end_field();
      rows.push_back(std::move(row));
      row.clear();
      i += (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ? 2 : 1;
    } else {
      field.push_back(c);
      field_started = true;
      ++i;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted field");
  if (field_started || !row.empty()) {
    end_field();
    rows.push_back(std::move(row));
  }
  return rows;
}

bool containment_is_forest(const meta::Model & model)
{
  const auto & mm = model.metamodel();
  std::map<std::string, std::vector<std::string>> containers;
  for (const auto & object : model.objects()) {
    const auto * cls = mm.find_class(object.class_name);
    if (cls == nullptr) continue;
    for (const auto * ref : mm.all_references(*cls)) {
      if (!ref->containment) continue;
      auto slot = object.references.find(ref->name);
      if (slot == object.references.end()) continue;
      for (const auto & child : slot->second) containers[child].push_back(object.id);
    }
  }
  for (const auto & [child, parents] : containers) {
    if (parents.size() > 1) return false;
  }
  for (const auto & object : model.objects()) {
    std::set<std::string> seen{object.id};
    std::string at = object.id;
    while (true) {
      auto it = containers.find(at);
      if (it == containers.end()) break;
      at = it->second.front();
      if (!seen.insert(at).second) return false;
    }
  }
  return true;
}

}  // namespace bmod::test_support
