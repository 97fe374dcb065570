#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plsphere {

enum class ErrorKind {
  EmptyInput,
  DuplicateVertexInFacet,
  NotPure,
  NotAFace,
  NotPseudomanifold,
  NotConnected,
  DimensionOutOfRange,
  CapacityExceeded,
  InconsistentMatching,
  StaleOption,
  ImproperMove,
  InvalidSpec,
  PrereqFailed,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` lets front ends map
/// failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace plsphere
