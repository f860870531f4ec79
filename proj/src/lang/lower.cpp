#include "bmod/lang/lower.hpp"

#include "bmod/error.hpp"
#include "bmod/meta/conformance.hpp"

namespace bmod::lang
{

using meta::ObjectRef;
using meta::Value;
using meta::ValueList;

namespace
{

Value str(const std::string & s) { return Value{s}; }
Value num(std::int64_t v) { return Value{v}; }

}  // namespace

LoweredScenario lower(const Scenario & scenario, std::shared_ptr<const meta::MetaModel> mm)
{
  LoweredScenario out{meta::Model(std::move(mm)), {}, {}};
  meta::Model & model = out.model;

  // Doors are resolved after every room exists.
  struct PendingTarget
  {
    std::string door_id;
    std::string room_name;
  };
  std::vector<PendingTarget> targets;
  std::map<std::string, std::string, std::less<>> room_by_name;

  for (const auto & floor : scenario.floors) {
    const std::string floor_id = model.instantiate("Floor").id;
    model.set_feature(floor_id, "name", str(floor.name));
    out.floor_ids.push_back(floor_id);
    out.room_ids.emplace_back();

    ValueList rooms;
    for (const auto & room : floor.rooms) {
      const std::string room_id = model.instantiate("Room").id;
      model.set_feature(room_id, "name", str(room.name));
      model.set_feature(room_id, "width", num(room.width));
      model.set_feature(room_id, "height", num(room.height));
      room_by_name.emplace(room.name, room_id);
      out.room_ids.back().push_back(room_id);
      rooms.push_back(ObjectRef{room_id});

      const auto w = static_cast<std::size_t>(room.width);
      const auto h = static_cast<std::size_t>(room.height);
      std::vector<bool> wall(w * h, false);
      std::vector<bool> fire(w * h, false);
      auto inside = [&](const Coord & c) {
        return c.x >= 0 && c.y >= 0 && c.x < room.width && c.y < room.height;
      };
      auto slot = [&](const Coord & c) { return static_cast<std::size_t>(c.y) * w + static_cast<std::size_t>(c.x); };
      for (const auto & item : room.items) {
        if (inside(item.at) && item.kind == ItemKind::wall) wall[slot(item.at)] = true;
        if (inside(item.at) && item.kind == ItemKind::fire) fire[slot(item.at)] = true;
      }

      std::vector<std::string> cell_ids(w * h);
      ValueList cells;
      cells.reserve(w * h);
      for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
          const std::size_t k = y * w + x;
          cell_ids[k] = model.instantiate(wall[k] ? "Wall" : "Cell").id;
          model.set_feature(cell_ids[k], "x", num(static_cast<std::int64_t>(x)));
          model.set_feature(cell_ids[k], "y", num(static_cast<std::int64_t>(y)));
          if (fire[k]) {
            model.set_feature(cell_ids[k], "onFire", Value{true});
          }
          cells.push_back(ObjectRef{cell_ids[k]});
        }
      }

      std::vector<ValueList> people(w * h), doors(w * h), signs(w * h);
      for (const auto & item : room.items) {
        std::string id;
        switch (item.kind) {
          case ItemKind::wall:
          case ItemKind::fire:
            continue;
          case ItemKind::person:
            id = model.instantiate("Person").id;
            model.set_feature(id, "name", str(item.name));
            if (inside(item.at)) people[slot(item.at)].push_back(ObjectRef{id});
            break;
          case ItemKind::door:
            id = model.instantiate("Door").id;
            model.set_feature(id, "name", str(item.name));
            model.set_feature(id, "locked", Value{item.locked});
            model.set_feature(id, "exit", Value{item.exit});
            if (item.target) targets.push_back({id, *item.target});
            if (inside(item.at)) doors[slot(item.at)].push_back(ObjectRef{id});
            break;
          case ItemKind::sign:
            id = model.instantiate("EMSign").id;
            model.set_feature(id, "direction", str(std::string(to_string(item.facing))));
            if (inside(item.at)) signs[slot(item.at)].push_back(ObjectRef{id});
            break;
        }
      }
      for (std::size_t k = 0; k < w * h; ++k) {
        if (!people[k].empty()) model.set_feature(cell_ids[k], "people", std::move(people[k]));
        if (!doors[k].empty()) model.set_feature(cell_ids[k], "doors", std::move(doors[k]));
        if (!signs[k].empty()) model.set_feature(cell_ids[k], "signs", std::move(signs[k]));
      }
      model.set_feature(room_id, "cells", std::move(cells));
    }
    model.set_feature(floor_id, "rooms", std::move(rooms));
  }

  for (const auto & pending : targets) {
    if (auto it = room_by_name.find(pending.room_name); it != room_by_name.end()) {
      model.set_feature(pending.door_id, "targetRoom", Value{ObjectRef{it->second}});
    }
  }

  Diagnostics findings = meta::check_conformance(model, model.metamodel());
  if (has_errors(findings)) {
    throw Error(ErrorKind::conformance, "lowered scenario does not conform", std::move(findings));
  }
  return out;
}

}  // namespace bmod::lang
