#pragma once

#include <string>
#include <vector>

#include "bmod/codegen/template.hpp"
#include "bmod/meta/metamodel.hpp"

namespace bmod::codegen
{

struct GeneratedFile
{
  std::string filename;
  std::string content;

  friend bool operator==(const GeneratedFile &, const GeneratedFile &) = default;
};

struct GenerationResult
{
  std::vector<GeneratedFile> files;  ///< sorted by filename
  Diagnostics warnings;              ///< GEN_NAME_COLLISION renames
};

inline constexpr std::string_view name_collision = "GEN_NAME_COLLISION";

/// `on_fire`, `on-fire` and `OnFire` all become `onFire`.
std::string lower_camel(std::string_view name);
std::string upper_camel(std::string_view name);

/// One file per class, named `<ClassName>.<ext>`. Each attribute gets a field,
/// a getter (`is` prefix for single booleans when the template says so) and a
/// setter; single references get getter/setter, multi-valued references get
/// getter/add/remove. Byte-deterministic in (mm, tmpl).
GenerationResult generate(const meta::MetaModel & mm, const GenTemplate & tmpl);

/// Lowercase hex SHA-256 of `content`.
std::string sha256_hex(std::string_view content);

/// {"template", "metamodel", "files": [{"path", "sha256", "bytes"}]}
std::string manifest_json(const meta::MetaModel & mm, const GenTemplate & tmpl, const GenerationResult & result);

}  // namespace bmod::codegen
