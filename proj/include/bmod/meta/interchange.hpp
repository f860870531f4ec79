#pragma once

#include <string>
#include <string_view>

#include "bmod/meta/model.hpp"

namespace bmod::meta
{

/// Model interchange document:
/// {"metamodel": name, "objects": [{"id", "class", "attrs": {...}, "refs": {...}}]}
/// Slot values are always written as JSON arrays.
std::string model_to_json(const Model & model);

/// Parses an interchange document, resolving the metamodel by name, and runs
/// check_conformance. Throws Error(interchange) on malformed JSON and
/// Error(conformance) carrying the diagnostics on any error-severity finding.
Model model_from_json(std::string_view text);

/// Metamodel document: {"name", "classes": [{"name", "abstract", "supertype",
/// "attributes": [...], "references": [...], "operations": [...]}]}.
std::string metamodel_to_json(const MetaModel & mm);

/// Throws Error(invalid_metamodel) when the document or its invariants are bad.
MetaModel metamodel_from_json(std::string_view text);

}  // namespace bmod::meta
