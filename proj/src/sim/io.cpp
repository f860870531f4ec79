#include "bmod/sim/io.hpp"

#include "bmod/error.hpp"
#include "bmod/lang/scenario_json.hpp"
#include "json.hpp"

namespace bmod::sim
{

using nlohmann::ordered_json;

namespace
{

ordered_json cell_to_json(const Floorplan & plan, CellIndex c)
{
  const CellRef ref = plan.cell_at(c);
  return ordered_json{{"room", plan.rooms()[ref.room].name}, {"x", ref.x}, {"y", ref.y}};
}

CellIndex cell_from_json(const Floorplan & plan, const nlohmann::json & j)
{
  auto room = plan.room_index(j.at("room").get<std::string>());
  if (!room) {
    throw Error(ErrorKind::interchange, "snapshot names unknown room");
  }
  auto c = plan.index_of(CellRef{*room, j.at("x").get<std::int64_t>(), j.at("y").get<std::int64_t>()});
  if (!c) {
    throw Error(ErrorKind::interchange, "snapshot cell outside its room");
  }
  return *c;
}

PersonStatus status_from_string(const std::string & s)
{
  if (s == "active") return PersonStatus::active;
  if (s == "evacuated") return PersonStatus::evacuated;
  if (s == "dead") return PersonStatus::dead;
  throw Error(ErrorKind::interchange, "unknown person status '" + s + "'");
}

}  // namespace

std::string trace_to_jsonl(const std::vector<TraceEvent> & trace)
{
  std::string out;
  for (const auto & e : trace) {
    ordered_json line{{"tick", e.tick}, {"kind", e.kind}, {"subject", e.subject}, {"detail", e.detail}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::string result_to_json(const SimulationResult & result, const Floorplan & plan)
{
  ordered_json people = ordered_json::array();
  for (const auto & p : result.people) {
    ordered_json item{{"name", p.name}, {"outcome", to_string(p.status)}};
    item["tick"] = p.status == PersonStatus::active ? ordered_json(nullptr) : ordered_json(p.tick);
    item["room"] = plan.rooms()[p.cell.room].name;
    item["x"] = p.cell.x;
    item["y"] = p.cell.y;
    people.push_back(std::move(item));
  }
  ordered_json doc{{"ticks", result.ticks},
                   {"evacuated", result.evacuated},
                   {"dead", result.dead},
                   {"trapped", result.trapped},
                   {"burning_cells", result.burning_cells},
                   {"people", std::move(people)}};
  return doc.dump(2) + "\n";
}

std::string snapshot_to_json(const SimulationState & state)
{
  const Floorplan & plan = *state.plan;
  ordered_json people = ordered_json::array();
  for (const auto & p : state.people) {
    people.push_back(
      {{"name", p.name}, {"status", to_string(p.status)}, {"tick", p.tick}, {"cell", cell_to_json(plan, p.cell)}});
  }
  ordered_json burning = ordered_json::array();
  for (CellIndex c = 0; c < plan.cell_count(); ++c) {
    if (state.burning[c]) {
      burning.push_back(cell_to_json(plan, c));
    }
  }
  ordered_json trace = ordered_json::array();
  for (const auto & e : state.trace) {
    trace.push_back({{"tick", e.tick}, {"kind", e.kind}, {"subject", e.subject}, {"detail", e.detail}});
  }
  ordered_json doc{
    {"format", "bmod-sim-snapshot"},
    {"version", 1},
    {"config",
     {{"seed", state.config.seed},
      {"max_ticks", state.config.max_ticks},
      {"fire_period", state.config.fire_period},
      {"policy", to_string(state.config.policy)}}},
    {"scenario", ordered_json(lang::scenario_to_json(plan.scenario()))},
    {"tick", state.tick},
    {"paused", state.paused},
    {"people", std::move(people)},
    {"burning", std::move(burning)},
    {"trace", std::move(trace)},
  };
  return doc.dump(2) + "\n";
}

SimulationState snapshot_from_json(std::string_view text)
{
  auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || doc.value("format", "") != "bmod-sim-snapshot") {
    throw Error(ErrorKind::interchange, "not a simulation snapshot");
  }
  try {
    SimulationState state;
    const auto & cfg = doc.at("config");
    state.config.seed = cfg.at("seed").get<std::uint64_t>();
    state.config.max_ticks = cfg.at("max_ticks").get<std::uint64_t>();
    state.config.fire_period = cfg.at("fire_period").get<std::uint64_t>();
    auto policy = policy_from_string(cfg.at("policy").get<std::string>());
    if (!policy || state.config.fire_period == 0) {
      throw Error(ErrorKind::interchange, "bad snapshot config");
    }
    state.config.policy = *policy;

    state.plan = std::make_shared<const Floorplan>(lang::scenario_from_json(doc.at("scenario")));
    const Floorplan & plan = *state.plan;
    state.tick = doc.at("tick").get<std::uint64_t>();
    state.paused = doc.at("paused").get<bool>();
    for (const auto & p : doc.at("people")) {
      state.people.push_back(PersonState{p.at("name").get<std::string>(),
                                         status_from_string(p.at("status").get<std::string>()),
                                         cell_from_json(plan, p.at("cell")), p.at("tick").get<std::uint64_t>()});
    }
    state.burning.assign(plan.cell_count(), false);
    for (const auto & c : doc.at("burning")) {
      state.burning[cell_from_json(plan, c)] = true;
    }
    for (const auto & e : doc.at("trace")) {
      state.trace.push_back(TraceEvent{e.at("tick").get<std::uint64_t>(), e.at("kind").get<std::string>(),
                                       e.at("subject").get<std::string>(), e.at("detail").get<std::string>()});
    }
    state.distances = compute_distance_field(state);
    return state;
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorKind::interchange, std::string("malformed snapshot: ") + e.what());
  }
}

}  // namespace bmod::sim
