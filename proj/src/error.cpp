#include "pkmdesign/error.hpp"

namespace pkm {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::NoAssembly: return "NoAssembly";
    case ErrorKind::SingularAssembly: return "SingularAssembly";
    case ErrorKind::ParallelSingular: return "ParallelSingular";
    case ErrorKind::LegOutOfReach: return "LegOutOfReach";
    case ErrorKind::NoFeasibleSquare: return "NoFeasibleSquare";
    case ErrorKind::CenterInfeasible: return "CenterInfeasible";
    case ErrorKind::AllInfeasible: return "AllInfeasible";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace pkm
