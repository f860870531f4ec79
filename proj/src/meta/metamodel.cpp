#include "bmod/meta/metamodel.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace bmod::meta
{

std::string_view to_string(ValueKind kind) noexcept
{
  switch (kind) {
    case ValueKind::boolean: return "boolean";
    case ValueKind::integer: return "integer";
    case ValueKind::string: return "string";
    case ValueKind::enumeration: return "enum";
  }
  return "unknown";
}

std::string format_bound(std::int32_t bound)
{
  return bound == unbounded ? std::string("*") : std::to_string(bound);
}

std::string literal_to_string(const Literal & literal)
{
  return std::visit(
    [](const auto & v) -> std::string {
      using T = std::decay_t<decltype(v)>;
      if constexpr (std::is_same_v<T, bool>) {
        return v ? "true" : "false";
      } else if constexpr (std::is_same_v<T, std::int64_t>) {
        return std::to_string(v);
      } else {
        return v;
      }
    },
    literal);
}

bool MetaAttribute::accepts(const Literal & literal) const
{
  switch (kind) {
    case ValueKind::boolean: return std::holds_alternative<bool>(literal);
    case ValueKind::integer: return std::holds_alternative<std::int64_t>(literal);
    case ValueKind::string: return std::holds_alternative<std::string>(literal);
    case ValueKind::enumeration: {
      const auto * text = std::get_if<std::string>(&literal);
      return text != nullptr &&
             std::find(enum_literals.begin(), enum_literals.end(), *text) != enum_literals.end();
    }
  }
  return false;
}

MetaClass & MetaModel::add_class(MetaClass cls)
{
  classes_.push_back(std::move(cls));
  return classes_.back();
}

const MetaClass * MetaModel::find_class(std::string_view name) const noexcept
{
  auto it = std::find_if(classes_.begin(), classes_.end(),
                         [&](const MetaClass & c) { return c.name == name; });
  return it == classes_.end() ? nullptr : &*it;
}

std::vector<const MetaClass *> MetaModel::lineage(const MetaClass & cls) const
{
  std::vector<const MetaClass *> chain;
  std::unordered_set<const MetaClass *> seen;
  for (const MetaClass * cur = &cls; cur != nullptr && seen.insert(cur).second;) {
    chain.push_back(cur);
    cur = cur->supertype ? find_class(*cur->supertype) : nullptr;
  }
  return chain;
}

bool MetaModel::is_kind_of(std::string_view cls, std::string_view ancestor) const
{
  const MetaClass * c = find_class(cls);
  if (c == nullptr) {
    return false;
  }
  for (const MetaClass * link : lineage(*c)) {
    if (link->name == ancestor) {
      return true;
    }
  }
  return false;
}

FeatureRef MetaModel::find_feature(const MetaClass & cls, std::string_view feature) const
{
  for (const MetaClass * link : lineage(cls)) {
    for (const auto & a : link->attributes) {
      if (a.name == feature) {
        return {link, &a, nullptr};
      }
    }
    for (const auto & r : link->references) {
      if (r.name == feature) {
        return {link, nullptr, &r};
      }
    }
  }
  return {};
}

std::vector<const MetaAttribute *> MetaModel::all_attributes(const MetaClass & cls) const
{
  auto chain = lineage(cls);
  std::vector<const MetaAttribute *> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    for (const auto & a : (*it)->attributes) {
      out.push_back(&a);
    }
  }
  return out;
}

std::vector<const MetaReference *> MetaModel::all_references(const MetaClass & cls) const
{
  auto chain = lineage(cls);
  std::vector<const MetaReference *> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    for (const auto & r : (*it)->references) {
      out.push_back(&r);
    }
  }
  return out;
}

namespace
{

Diagnostic schema_error(std::string code, std::string object, std::string message)
{
  return Diagnostic{Severity::error, std::move(code), std::move(message), std::move(object), {}, false};
}

bool valid_bounds(const Multiplicity & m)
{
  if (m.lower < 0) {
    return false;
  }
  if (m.upper == unbounded) {
    return true;
  }
  return m.upper >= 1 && m.lower <= m.upper;
}

}  // namespace

Diagnostics MetaModel::check_invariants() const
{
  Diagnostics out;
  std::set<std::string, std::less<>> names;
  for (const auto & cls : classes_) {
    if (cls.name.empty()) {
      out.push_back(schema_error("MM_EMPTY_NAME", "", "class with empty name"));
    }
    if (!names.insert(cls.name).second) {
      out.push_back(schema_error("MM_DUP_CLASS", cls.name, "duplicate class '" + cls.name + "'"));
    }
  }

  for (const auto & cls : classes_) {
    if (cls.supertype && find_class(*cls.supertype) == nullptr) {
      out.push_back(schema_error("MM_UNKNOWN_SUPERTYPE", cls.name,
                                 "supertype '" + *cls.supertype + "' is not declared"));
    }

    // Cycle check: walking the chain must end without revisiting a class.
    std::unordered_set<const MetaClass *> seen;
    const MetaClass * cur = &cls;
    bool cyclic = false;
    while (cur != nullptr) {
      if (!seen.insert(cur).second) {
        cyclic = true;
        break;
      }
      cur = cur->supertype ? find_class(*cur->supertype) : nullptr;
    }
    if (cyclic) {
      out.push_back(schema_error("MM_INHERITANCE_CYCLE", cls.name, "supertype chain of '" + cls.name + "' is cyclic"));
      continue;
    }

    std::set<std::string, std::less<>> features;
    for (const MetaClass * link : lineage(cls)) {
      for (const auto & a : link->attributes) {
        if (!features.insert(a.name).second) {
          out.push_back(schema_error("MM_DUP_FEATURE", cls.name, "feature '" + a.name + "' declared twice"));
        }
      }
      for (const auto & r : link->references) {
        if (!features.insert(r.name).second) {
          out.push_back(schema_error("MM_DUP_FEATURE", cls.name, "feature '" + r.name + "' declared twice"));
        }
      }
    }

    for (const auto & a : cls.attributes) {
      if (!valid_bounds(a.bounds)) {
        out.push_back(schema_error("MM_BAD_BOUNDS", cls.name, "attribute '" + a.name + "' has invalid bounds"));
      }
      if (a.kind == ValueKind::enumeration && a.enum_literals.empty()) {
        out.push_back(schema_error("MM_EMPTY_ENUM", cls.name, "enum attribute '" + a.name + "' has no literals"));
      }
      if (a.default_value && !a.accepts(*a.default_value)) {
        out.push_back(schema_error("MM_BAD_DEFAULT", cls.name,
                                   "default of '" + a.name + "' does not match its kind"));
      }
    }
    for (const auto & r : cls.references) {
      if (!valid_bounds(r.bounds)) {
        out.push_back(schema_error("MM_BAD_BOUNDS", cls.name, "reference '" + r.name + "' has invalid bounds"));
      }
      if (find_class(r.target) == nullptr) {
        out.push_back(schema_error("MM_UNKNOWN_TARGET", cls.name,
                                   "reference '" + r.name + "' targets undeclared class '" + r.target + "'"));
      }
    }
  }
  return out;
}

}  // namespace bmod::meta
