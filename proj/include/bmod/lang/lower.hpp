#pragma once

#include <map>
#include <string>

#include "bmod/lang/scenario.hpp"
#include "bmod/meta/model.hpp"

namespace bmod::lang
{

struct LoweredScenario
{
  meta::Model model;
  std::vector<std::string> floor_ids;
  std::vector<std::vector<std::string>> room_ids;  ///< [floor][room]
};

/// Builds the reflective model: one Floor/Room/Person/Door/EMSign object per
/// declaration, one Cell per grid position with Wall objects at wall
/// positions, containment slots filled. Items outside their room's grid are
/// created uncontained. Throws Error(conformance) carrying the findings when
/// the result does not conform to `mm`.
LoweredScenario lower(const Scenario & scenario, std::shared_ptr<const meta::MetaModel> mm);

}  // namespace bmod::lang
