#pragma once

#include <string>
#include <string_view>

#include "bmod/sim/simulator.hpp"

namespace bmod::sim
{

/// One JSON object per line: {"tick", "kind", "subject", "detail"}.
std::string trace_to_jsonl(const std::vector<TraceEvent> & trace);

std::string result_to_json(const SimulationResult & result, const Floorplan & plan);

/// Full state snapshot including the scenario, config and trace.
std::string snapshot_to_json(const SimulationState & state);

/// Restores a snapshot. Throws Error(interchange) on malformed documents.
SimulationState snapshot_from_json(std::string_view text);

}  // namespace bmod::sim
