#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pkm {

enum class ErrorKind {
  SingularMatrix,
  Unreachable,
  NoAssembly,
  SingularAssembly,
  ParallelSingular,
  LegOutOfReach,
  NoFeasibleSquare,
  CenterInfeasible,
  AllInfeasible,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Error raised by every kinematic and optimization routine in the library.
/// `leg()` is the 1-based index of the offending leg, or 0 when not applicable.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int leg = 0)
      : std::runtime_error(what), kind_(kind), leg_(leg) {}

  ErrorKind kind() const noexcept { return kind_; }
  int leg() const noexcept { return leg_; }

 private:
  ErrorKind kind_;
  int leg_;
};

}  // namespace pkm
