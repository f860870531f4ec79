#include "bmod/diagnostic.hpp"

#include <algorithm>
#include <sstream>

#include "bmod/error.hpp"
#include "json.hpp"

namespace bmod
{

std::string_view to_string(Severity severity) noexcept
{
  return severity == Severity::error ? "error" : "warning";
}

bool has_errors(const Diagnostics & diagnostics) noexcept
{
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic & d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic & d, std::string_view file)
{
  std::ostringstream out;
  out << to_string(d.severity) << ' ' << d.code << ' ' << file;
  if (d.has_span) {
    out << ':' << d.span.line << ':' << d.span.column;
  } else if (!d.object.empty()) {
    out << ':' << d.object;
  }
  out << ' ' << d.message;
  return out.str();
}

std::string diagnostics_to_json(const Diagnostics & diagnostics, std::string_view file)
{
  auto array = nlohmann::json::array();
  for (const auto & d : diagnostics) {
    nlohmann::json item{
      {"severity", to_string(d.severity)},
      {"code", d.code},
      {"message", d.message},
      {"file", file},
    };
    if (d.has_span) {
      item["line"] = d.span.line;
      item["column"] = d.span.column;
      item["begin"] = d.span.begin;
      item["end"] = d.span.end;
    }
    if (!d.object.empty()) {
      item["object"] = d.object;
    }
    array.push_back(std::move(item));
  }
  return array.dump();
}

std::string_view to_string(ErrorKind kind) noexcept
{
  switch (kind) {
    case ErrorKind::unknown_class: return "UnknownClass";
    case ErrorKind::abstract_class: return "AbstractClass";
    case ErrorKind::unknown_object: return "UnknownObject";
    case ErrorKind::unknown_feature: return "UnknownFeature";
    case ErrorKind::type_mismatch: return "TypeMismatch";
    case ErrorKind::upper_bound_exceeded: return "UpperBoundExceeded";
    case ErrorKind::containment_violation: return "ContainmentViolation";
    case ErrorKind::invalid_metamodel: return "InvalidMetaModel";
    case ErrorKind::conformance: return "ConformanceError";
    case ErrorKind::interchange: return "InterchangeError";
    case ErrorKind::unknown_cell: return "UnknownCell";
    case ErrorKind::init_error: return "InitError";
    case ErrorKind::sim_paused: return "SimPaused";
    case ErrorKind::sim_terminated: return "SimTerminated";
    case ErrorKind::state_mismatch: return "StateMismatch";
    case ErrorKind::unknown_template: return "UnknownTemplate";
    case ErrorKind::template_error: return "TemplateError";
    case ErrorKind::invalid_style: return "InvalidStyle";
  }
  return "Error";
}

}  // namespace bmod
