#pragma once

#include <string>

#include "bmod/lang/scenario.hpp"
#include "bmod/meta/metamodel.hpp"
#include "bmod/sim/simulator.hpp"
#include "bmod/views/style.hpp"

namespace bmod::views
{

/// Graphviz class diagram: one record node per class (declaration order),
/// inheritance edges with hollow arrowheads, containment edges with a diamond
/// tail, plain references as open arrows.
std::string export_class_diagram(const meta::MetaModel & mm);

/// CSV with header `class,feature,kind,type,lower,upper,default`, one row per
/// declared attribute or reference, sorted by (class, feature). A class
/// without features gets one row with an empty feature column.
std::string export_spreadsheet(const meta::MetaModel & mm);

/// SVG of the scenario: one group per room, one square per cell, glyphs per
/// the style, dashed connectors between paired doors. With a state, burning
/// cells and people reflect that state. Throws Error(state_mismatch) when the
/// state's rooms differ from the scenario's.
std::string render_scenario(const lang::Scenario & scenario, const sim::SimulationState * state = nullptr,
                            const ViewStyle & style = default_style());

}  // namespace bmod::views
