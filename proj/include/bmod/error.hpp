#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "bmod/diagnostic.hpp"

namespace bmod
{

enum class ErrorKind {
  unknown_class,
  abstract_class,
  unknown_object,
  unknown_feature,
  type_mismatch,
  upper_bound_exceeded,
  containment_violation,
  invalid_metamodel,
  conformance,
  interchange,
  unknown_cell,
  init_error,
  sim_paused,
  sim_terminated,
  state_mismatch,
  unknown_template,
  template_error,
  invalid_style,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for every failing operation in the library. Operations that
/// report findings (parse, validate, check_conformance) return diagnostics
/// instead of throwing.
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string & message, Diagnostics diagnostics = {})
  : std::runtime_error(message), kind_(kind), diagnostics_(std::move(diagnostics))
  {
  }

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const Diagnostics & diagnostics() const noexcept { return diagnostics_; }

private:
  ErrorKind kind_;
  Diagnostics diagnostics_;
};

}  // namespace bmod
