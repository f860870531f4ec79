#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bmod
{

/// Byte range in a source text plus the 1-based line/column of its start.
struct SourceSpan
{
  std::size_t begin = 0;
  std::size_t end = 0;
  std::uint32_t line = 1;
  std::uint32_t column = 1;

  friend bool operator==(const SourceSpan &, const SourceSpan &) = default;
};

enum class Severity { error, warning };

std::string_view to_string(Severity severity) noexcept;

/// A finding from parsing, validation or conformance checking.
///
/// `code` is a stable rule identifier (PARSE_*, VAL_*, CONF_*). Either `object`
/// (a model object id) or `span` locates the finding; `has_span` tells which.
struct Diagnostic
{
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  std::string object;
  SourceSpan span;
  bool has_span = false;

  friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics & diagnostics) noexcept;

/// `severity code file:line:col message`; falls back to the object id when
/// the diagnostic has no span.
std::string format_diagnostic(const Diagnostic & d, std::string_view file);

/// JSON array text, one object per diagnostic.
std::string diagnostics_to_json(const Diagnostics & diagnostics, std::string_view file);

}  // namespace bmod
