#include "bmod/lang/scenario_json.hpp"

#include "bmod/error.hpp"

namespace bmod::lang
{

using nlohmann::json;

json scenario_to_json(const Scenario & scenario)
{
  json floors = json::array();
  for (const auto & floor : scenario.floors) {
    json rooms = json::array();
    for (const auto & room : floor.rooms) {
      json items = json::array();
      for (const auto & item : room.items) {
        json j{{"kind", to_string(item.kind)}, {"x", item.at.x}, {"y", item.at.y}};
        if (item.kind == ItemKind::person || item.kind == ItemKind::door) {
          j["name"] = item.name;
        }
        if (item.kind == ItemKind::sign) {
          j["facing"] = to_string(item.facing);
        }
        if (item.kind == ItemKind::door) {
          j["target"] = item.target ? json(*item.target) : json(nullptr);
          j["locked"] = item.locked;
          j["exit"] = item.exit;
        }
        items.push_back(std::move(j));
      }
      rooms.push_back({{"name", room.name}, {"width", room.width}, {"height", room.height}, {"items", items}});
    }
    floors.push_back({{"name", floor.name}, {"rooms", rooms}});
  }
  return json{{"floors", floors}};
}

Scenario scenario_from_json(const json & doc)
{
  try {
    Scenario out;
    for (const auto & f : doc.at("floors")) {
      FloorDecl floor;
      floor.name = f.at("name").get<std::string>();
      for (const auto & r : f.at("rooms")) {
        RoomDecl room;
        room.name = r.at("name").get<std::string>();
        room.width = r.at("width").get<std::int64_t>();
        room.height = r.at("height").get<std::int64_t>();
        for (const auto & i : r.at("items")) {
          Item item;
          const auto kind = i.at("kind").get<std::string>();
          if (kind == "wall") item.kind = ItemKind::wall;
          else if (kind == "fire") item.kind = ItemKind::fire;
          else if (kind == "sign") item.kind = ItemKind::sign;
          else if (kind == "door") item.kind = ItemKind::door;
          else if (kind == "person") item.kind = ItemKind::person;
          else throw Error(ErrorKind::interchange, "unknown item kind '" + kind + "'");
          item.at = {i.at("x").get<std::int64_t>(), i.at("y").get<std::int64_t>()};
          item.name = i.value("name", std::string());
          if (item.kind == ItemKind::sign) {
            auto facing = direction_from_string(i.at("facing").get<std::string>());
            if (!facing) {
              throw Error(ErrorKind::interchange, "bad sign direction");
            }
            item.facing = *facing;
          }
          if (item.kind == ItemKind::door) {
            if (i.contains("target") && !i["target"].is_null()) {
              item.target = i["target"].get<std::string>();
            }
            item.locked = i.value("locked", false);
            item.exit = i.value("exit", false);
          }
          room.items.push_back(std::move(item));
        }
        floor.rooms.push_back(std::move(room));
      }
      out.floors.push_back(std::move(floor));
    }
    return out;
  } catch (const json::exception & e) {
    throw Error(ErrorKind::interchange, std::string("malformed scenario document: ") + e.what());
  }
}

}  // namespace bmod::lang
