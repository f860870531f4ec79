#include "bmod/sim/simulator.hpp"

#include <algorithm>

#include "bmod/error.hpp"
#include "bmod/validate/validator.hpp"

namespace bmod::sim
{

std::string_view to_string(MovementPolicy policy) noexcept
{
  return policy == MovementPolicy::signs_first ? "signs_first" : "shortest_path";
}

std::optional<MovementPolicy> policy_from_string(std::string_view text) noexcept
{
  if (text == "signs_first") return MovementPolicy::signs_first;
  if (text == "shortest_path") return MovementPolicy::shortest_path;
  return std::nullopt;
}

std::string_view to_string(PersonStatus status) noexcept
{
  switch (status) {
    case PersonStatus::active: return "active";
    case PersonStatus::evacuated: return "evacuated";
    case PersonStatus::dead: return "dead";
  }
  return "active";
}

std::size_t SimulationState::active_count() const
{
  return static_cast<std::size_t>(
    std::count_if(people.begin(), people.end(), [](const PersonState & p) { return p.status == PersonStatus::active; }));
}

std::size_t SimulationState::burning_count() const
{
  return static_cast<std::size_t>(std::count(burning.begin(), burning.end(), true));
}

namespace
{

void emit(SimulationState & state, std::uint64_t tick, std::string kind, std::string subject, std::string detail)
{
  state.trace.push_back(TraceEvent{tick, std::move(kind), std::move(subject), std::move(detail)});
}

/// Outcome checks shared by init (tick 0) and step.
void settle(SimulationState & state, std::uint64_t tick)
{
  const Floorplan & plan = *state.plan;
  for (auto & person : state.people) {
    if (person.status != PersonStatus::active) {
      continue;
    }
    if (state.burning[person.cell]) {
      person.status = PersonStatus::dead;
      person.tick = tick;
      emit(state, tick, "death", person.name, plan.label(person.cell));
    } else if (plan.is_exit(person.cell)) {
      person.status = PersonStatus::evacuated;
      person.tick = tick;
      emit(state, tick, "evacuate", person.name, plan.label(person.cell));
    }
  }
}

/// Cell the person moves to this tick, or its current cell.
CellIndex choose_move(const SimulationState & state, const PersonState & person)
{
  const Floorplan & plan = *state.plan;
  const CellIndex here = person.cell;

  if (state.config.policy == MovementPolicy::signs_first) {
    if (const auto & facing = plan.sign(here)) {
      if (auto next = plan.step(here, *facing); next && !plan.is_wall(*next) && !state.burning[*next]) {
        return *next;
      }
    }
  }

  const auto & hops = state.distances.hops;
  CellIndex best = here;
  std::int64_t best_hops = hops[here];
  for (CellIndex next : plan.neighbors(here)) {
    if (state.burning[next] || hops[next] == DistanceField::unreachable) {
      continue;
    }
    if (best_hops == DistanceField::unreachable || hops[next] < best_hops) {
      best = next;
      best_hops = hops[next];
    }
  }
  return best;
}

}  // namespace

SimulationState init(const lang::Scenario & scenario, const SimConfig & config)
{
  if (config.fire_period == 0) {
    throw Error(ErrorKind::init_error, "fire period must be positive");
  }
  Diagnostics findings = validate::validate(scenario);
  if (has_errors(findings)) {
    Diagnostics blocking;
    std::copy_if(findings.begin(), findings.end(), std::back_inserter(blocking),
                 [](const Diagnostic & d) { return d.severity == Severity::error; });
    const std::string message = "scenario has " + std::to_string(blocking.size()) + " blocking diagnostic(s)";
    throw Error(ErrorKind::init_error, message, std::move(blocking));
  }

  SimulationState state;
  state.config = config;
  state.plan = std::make_shared<const Floorplan>(scenario);
  const Floorplan & plan = *state.plan;
  state.burning.assign(plan.cell_count(), false);

  for (std::size_t ri = 0; ri < plan.rooms().size(); ++ri) {
    const auto & room = plan.rooms()[ri];
    const auto & decl = scenario.floors[room.floor].rooms[room.index_in_floor];
    for (const auto & item : decl.items) {
      const CellIndex c = *plan.index_of(CellRef{ri, item.at.x, item.at.y});
      if (item.kind == lang::ItemKind::fire && !state.burning[c]) {
        state.burning[c] = true;
      } else if (item.kind == lang::ItemKind::person) {
        state.people.push_back(PersonState{item.name, PersonStatus::active, c, 0});
      }
    }
  }
  for (CellIndex c = 0; c < plan.cell_count(); ++c) {
    if (state.burning[c]) {
      emit(state, 0, "ignite", plan.label(c), "declared");
    }
  }
  state.distances = compute_distance_field(state);
  settle(state, 0);
  return state;
}

std::vector<CellRef> neighbors(const Floorplan & plan, const CellRef & cell)
{
  auto index = plan.index_of(cell);
  if (!index) {
    throw Error(ErrorKind::unknown_cell, "no cell at (" + std::to_string(cell.x) + "," + std::to_string(cell.y) +
                                           ") in room #" + std::to_string(cell.room));
  }
  std::vector<CellRef> out;
  for (CellIndex n : plan.neighbors(*index)) {
    out.push_back(plan.cell_at(n));
  }
  return out;
}

DistanceField compute_distance_field(const SimulationState & state)
{
  return distance_field(*state.plan, state.burning);
}

bool terminated(const SimulationState & state)
{
  return state.active_count() == 0 || state.tick >= state.config.max_ticks;
}

void step(SimulationState & state)
{
  if (state.paused) {
    throw Error(ErrorKind::sim_paused, "simulation is paused");
  }
  if (terminated(state)) {
    throw Error(ErrorKind::sim_terminated, "simulation has terminated");
  }
  const Floorplan & plan = *state.plan;
  const std::uint64_t next_tick = state.tick + 1;

  // (1) fire spreads from the cells burning at the start of the tick
  if (next_tick % state.config.fire_period == 0) {
    std::vector<CellIndex> ignited;
    for (CellIndex c = 0; c < plan.cell_count(); ++c) {
      if (!state.burning[c]) {
        continue;
      }
      for (CellIndex n : plan.grid_neighbors(c)) {
        if (!state.burning[n]) {
          ignited.push_back(n);
        }
      }
    }
    std::sort(ignited.begin(), ignited.end());
    ignited.erase(std::unique(ignited.begin(), ignited.end()), ignited.end());
    for (CellIndex c : ignited) {
      state.burning[c] = true;
      emit(state, next_tick, "ignite", plan.label(c), "spread");
    }
    // (2)
    if (!ignited.empty()) {
      state.distances = compute_distance_field(state);
    }
  }

  // (3) movement, declaration order
  for (auto & person : state.people) {
    if (person.status != PersonStatus::active) {
      continue;
    }
    const CellIndex target = choose_move(state, person);
    if (target == person.cell) {
      continue;
    }
    const bool jump = plan.cell_at(target).room != plan.cell_at(person.cell).room;
    emit(state, next_tick, jump ? "door_crossing" : "move", person.name,
         plan.label(person.cell) + "->" + plan.label(target));
    person.cell = target;
  }

  // (4) outcomes, then (5) the clock
  settle(state, next_tick);
  state.tick = next_tick;
}

SimulationResult summarize(const SimulationState & state)
{
  SimulationResult result;
  result.ticks = state.tick;
  result.burning_cells = state.burning_count();
  for (const auto & person : state.people) {
    switch (person.status) {
      case PersonStatus::active: ++result.trapped; break;
      case PersonStatus::evacuated: ++result.evacuated; break;
      case PersonStatus::dead: ++result.dead; break;
    }
    result.people.push_back(PersonOutcome{person.name, person.status, person.tick, state.plan->cell_at(person.cell)});
  }
  return result;
}

SimulationResult run(SimulationState & state)
{
  if (state.paused) {
    throw Error(ErrorKind::sim_paused, "simulation is paused");
  }
  while (!terminated(state)) {
    step(state);
  }
  return summarize(state);
}

void pause(SimulationState & state)
{
  if (!state.paused) {
    state.paused = true;
    emit(state, state.tick, "pause", "simulation", "");
  }
}

void resume(SimulationState & state)
{
  if (state.paused) {
    state.paused = false;
    emit(state, state.tick, "resume", "simulation", "");
  }
}

}  // namespace bmod::sim
