#pragma once

#include <memory>

#include "bmod/meta/metamodel.hpp"

namespace bmod::meta
{

/// The Bmod evacuation metamodel: Floor, Room, Cell, Wall, Door, Person,
/// EMSign, CellNavigationManager and SimulationManager.
MetaModel build_bmod_metamodel();

/// Process-wide shared instance of `build_bmod_metamodel()`.
std::shared_ptr<const MetaModel> bmod_metamodel();

/// Resolves a metamodel by name; only "bmod" is built in.
std::shared_ptr<const MetaModel> builtin_metamodel(std::string_view name);

}  // namespace bmod::meta
