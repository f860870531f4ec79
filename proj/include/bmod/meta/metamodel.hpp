#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bmod/diagnostic.hpp"

namespace bmod::meta
{

enum class ValueKind { boolean, integer, string, enumeration };

std::string_view to_string(ValueKind kind) noexcept;

/// Upper bound sentinel for `0..*` style multiplicities.
inline constexpr std::int32_t unbounded = -1;

struct Multiplicity
{
  std::int32_t lower = 0;
  std::int32_t upper = 1;  ///< `unbounded` or >= 1

  [[nodiscard]] bool is_many() const noexcept { return upper == unbounded || upper > 1; }
  [[nodiscard]] bool admits(std::size_t count) const noexcept
  {
    return count >= static_cast<std::size_t>(lower) &&
           (upper == unbounded || count <= static_cast<std::size_t>(upper));
  }

  friend bool operator==(const Multiplicity &, const Multiplicity &) = default;
};

std::string format_bound(std::int32_t bound);

/// Attribute literal. Enumeration literals are carried as strings and checked
/// against the attribute's literal set.
using Literal = std::variant<bool, std::int64_t, std::string>;

std::string literal_to_string(const Literal & literal);

struct MetaAttribute
{
  std::string name;
  ValueKind kind = ValueKind::string;
  std::vector<std::string> enum_literals;  ///< only for `enumeration`
  Multiplicity bounds;
  std::optional<Literal> default_value;

  [[nodiscard]] bool accepts(const Literal & literal) const;

  friend bool operator==(const MetaAttribute &, const MetaAttribute &) = default;
};

struct MetaReference
{
  std::string name;
  std::string target;
  bool containment = false;
  Multiplicity bounds{0, unbounded};

  friend bool operator==(const MetaReference &, const MetaReference &) = default;
};

/// Declared operation: a name and parameter names, no body.
struct MetaOperation
{
  std::string name;
  std::vector<std::string> parameters;

  friend bool operator==(const MetaOperation &, const MetaOperation &) = default;
};

struct MetaClass
{
  std::string name;
  bool is_abstract = false;
  std::optional<std::string> supertype;
  std::vector<MetaAttribute> attributes;
  std::vector<MetaReference> references;
  std::vector<MetaOperation> operations;

  friend bool operator==(const MetaClass &, const MetaClass &) = default;
};

/// Feature looked up through the supertype chain.
struct FeatureRef
{
  const MetaClass * owner = nullptr;
  const MetaAttribute * attribute = nullptr;
  const MetaReference * reference = nullptr;

  explicit operator bool() const noexcept { return attribute != nullptr || reference != nullptr; }
};

class MetaModel
{
public:
  MetaModel() = default;
  explicit MetaModel(std::string name) : name_(std::move(name)) {}

  /// Appends a class. Invariants are checked by `check_invariants`, not here,
  /// so schemas may be assembled in any order.
  MetaClass & add_class(MetaClass cls);

  [[nodiscard]] const std::string & name() const noexcept { return name_; }
  [[nodiscard]] const std::vector<MetaClass> & classes() const noexcept { return classes_; }
  [[nodiscard]] const MetaClass * find_class(std::string_view name) const noexcept;

  /// Supertype chain starting at `cls` itself. Stops on cycles.
  [[nodiscard]] std::vector<const MetaClass *> lineage(const MetaClass & cls) const;

  /// True when `cls` equals `ancestor` or inherits from it.
  [[nodiscard]] bool is_kind_of(std::string_view cls, std::string_view ancestor) const;

  [[nodiscard]] FeatureRef find_feature(const MetaClass & cls, std::string_view feature) const;

  /// Inherited features first, in declaration order.
  [[nodiscard]] std::vector<const MetaAttribute *> all_attributes(const MetaClass & cls) const;
  [[nodiscard]] std::vector<const MetaReference *> all_references(const MetaClass & cls) const;

  /// Schema-level invariants: unique class names, resolvable supertypes and
  /// reference targets, acyclic inheritance, unique feature names including
  /// inherited ones, sane bounds, defaults matching kinds.
  [[nodiscard]] Diagnostics check_invariants() const;

  friend bool operator==(const MetaModel &, const MetaModel &) = default;

private:
  std::string name_;
  std::vector<MetaClass> classes_;
};

}  // namespace bmod::meta
