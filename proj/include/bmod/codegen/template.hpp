#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bmod/diagnostic.hpp"

namespace bmod::codegen
{

/// A code-generation target: type mapping plus text fragments with
/// `{{placeholder}}` slots. Fragment keys:
///
///   file, extends, abstract, enum_decl, enum_literal, enum_value, field,
///   field_init, list_init, constructor, getter, bool_getter, setter,
///   list_getter, adder, remover, operation, parameter
///
/// and scalar settings: type_boolean, type_integer, type_string, box_boolean,
/// box_integer, box_string, list_type, enum_separator, parameter_separator,
/// string_quote.
struct GenTemplate
{
  std::string name;
  std::string extension;
  std::vector<std::string> reserved_words;
  std::map<std::string, std::string, std::less<>> fragments;

  /// Fragment text; throws Error(template_error) when missing.
  [[nodiscard]] const std::string & fragment(std::string_view key) const;
};

/// Built-in template names in listing order.
const std::vector<std::string> & builtin_template_names();

/// Built-in template by name, or nullopt.
std::optional<GenTemplate> builtin_template(std::string_view name);

struct TemplateListing
{
  std::vector<std::string> names;
  Diagnostics warnings;
};

/// Built-ins followed by `<name>.json` entries of `user_dir` (sorted). An
/// unreadable directory yields a warning and the built-ins only.
TemplateListing list_templates(const std::optional<std::filesystem::path> & user_dir);

/// Resolves a built-in or a user template. A user template is a JSON object
/// {"base": builtin, "extension": ext, "reserved_words": [...],
/// "fragments": {key: text}} layered over its base. Throws
/// Error(unknown_template) listing the available names, or
/// Error(template_error) for malformed files.
GenTemplate load_template(std::string_view name, const std::optional<std::filesystem::path> & user_dir);

/// Replaces `{{key}}` occurrences from `vars`. Throws Error(template_error) on
/// an unknown or unterminated placeholder.
std::string render(std::string_view text, const std::map<std::string, std::string, std::less<>> & vars);

}  // namespace bmod::codegen
