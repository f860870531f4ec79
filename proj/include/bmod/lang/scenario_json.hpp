#pragma once

#include <string>
#include <string_view>

#include "bmod/lang/scenario.hpp"
#include "json.hpp"

namespace bmod::lang
{

/// Order-preserving JSON form of a Scenario (used inside simulation snapshots).
nlohmann::json scenario_to_json(const Scenario & scenario);

/// Throws Error(interchange) on malformed documents.
Scenario scenario_from_json(const nlohmann::json & doc);

}  // namespace bmod::lang
