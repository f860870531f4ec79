#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bmod/lang/scenario.hpp"
#include "bmod/sim/floorplan.hpp"

namespace bmod::sim
{

enum class MovementPolicy { signs_first, shortest_path };

std::string_view to_string(MovementPolicy policy) noexcept;
std::optional<MovementPolicy> policy_from_string(std::string_view text) noexcept;

struct SimConfig
{
  std::uint64_t seed = 0;  ///< reserved; every rule is deterministic
  std::uint64_t max_ticks = 10'000;
  std::uint64_t fire_period = 1;
  MovementPolicy policy = MovementPolicy::signs_first;

  friend bool operator==(const SimConfig &, const SimConfig &) = default;
};

enum class PersonStatus { active, evacuated, dead };

std::string_view to_string(PersonStatus status) noexcept;

struct PersonState
{
  std::string name;
  PersonStatus status = PersonStatus::active;
  CellIndex cell = 0;
  std::uint64_t tick = 0;  ///< tick of evacuation or death

  friend bool operator==(const PersonState &, const PersonState &) = default;
};

/// Trace event kinds: ignite, move, door_crossing, evacuate, death, pause, resume.
struct TraceEvent
{
  std::uint64_t tick = 0;
  std::string kind;
  std::string subject;
  std::string detail;

  friend bool operator==(const TraceEvent &, const TraceEvent &) = default;
};

struct SimulationState
{
  SimConfig config;
  std::shared_ptr<const Floorplan> plan;
  std::uint64_t tick = 0;
  bool paused = false;
  std::vector<PersonState> people;  ///< declaration order
  std::vector<bool> burning;        ///< per cell
  DistanceField distances;
  std::vector<TraceEvent> trace;

  [[nodiscard]] std::size_t active_count() const;
  [[nodiscard]] std::size_t burning_count() const;
};

struct PersonOutcome
{
  std::string name;
  PersonStatus status = PersonStatus::active;
  std::uint64_t tick = 0;
  CellRef cell;

  friend bool operator==(const PersonOutcome &, const PersonOutcome &) = default;
};

struct SimulationResult
{
  std::uint64_t ticks = 0;
  std::size_t evacuated = 0;
  std::size_t dead = 0;
  std::size_t trapped = 0;
  std::size_t burning_cells = 0;
  std::vector<PersonOutcome> people;

  friend bool operator==(const SimulationResult &, const SimulationResult &) = default;
};

/// Starts a simulation at tick 0. Declared fires burn; people on a burning
/// cell die and people on an unlocked exit cell are evacuated immediately.
/// Throws Error(init_error) carrying the validator's errors when the scenario
/// is not simulatable.
SimulationState init(const lang::Scenario & scenario, const SimConfig & config);

/// Navigable neighbors of `cell` (see Floorplan::neighbors). Throws
/// Error(unknown_cell) when the cell is not on the plan.
std::vector<CellRef> neighbors(const Floorplan & plan, const CellRef & cell);

/// Distance field for the state's current burning set.
DistanceField compute_distance_field(const SimulationState & state);

/// True once nobody is active or the tick budget is spent.
bool terminated(const SimulationState & state);

/// Advances one tick: fire spread, distance refresh, movement, outcome
/// checks, tick increment. Throws Error(sim_paused) / Error(sim_terminated).
void step(SimulationState & state);

/// Steps until terminated. Throws Error(sim_paused) on a paused state.
SimulationResult run(SimulationState & state);

/// Summary of the state as it stands; people still active count as trapped.
SimulationResult summarize(const SimulationState & state);

/// Idempotent; each effective toggle records a trace event.
void pause(SimulationState & state);
void resume(SimulationState & state);

}  // namespace bmod::sim
