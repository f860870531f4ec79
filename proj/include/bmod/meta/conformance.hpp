#pragma once

#include "bmod/diagnostic.hpp"
#include "bmod/meta/model.hpp"

namespace bmod::meta
{

/// Conformance rule codes.
namespace conf
{
inline constexpr std::string_view unknown_class = "CONF_UNKNOWN_CLASS";
inline constexpr std::string_view abstract_class = "CONF_ABSTRACT_CLASS";
inline constexpr std::string_view duplicate_id = "CONF_DUP_ID";
inline constexpr std::string_view unknown_feature = "CONF_UNKNOWN_FEATURE";
inline constexpr std::string_view type_mismatch = "CONF_TYPE_MISMATCH";
inline constexpr std::string_view lower_bound = "CONF_LOWER_BOUND";
inline constexpr std::string_view upper_bound = "CONF_UPPER_BOUND";
inline constexpr std::string_view dangling_ref = "CONF_DANGLING_REF";
inline constexpr std::string_view target_class = "CONF_TARGET_CLASS";
inline constexpr std::string_view multiple_containers = "CONF_MULTIPLE_CONTAINERS";
inline constexpr std::string_view containment_cycle = "CONF_CONTAINMENT_CYCLE";
}  // namespace conf

/// Checks `model` against `mm`. Findings are returned in object order; an
/// empty list means the model conforms.
Diagnostics check_conformance(const Model & model, const MetaModel & mm);

}  // namespace bmod::meta
