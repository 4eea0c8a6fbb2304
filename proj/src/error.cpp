#include "buildwalk/error.hpp"

namespace buildwalk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidWalk: return "invalid-walk";
    case ErrorKind::GroupTooLarge: return "group-too-large-or-infinite";
    case ErrorKind::RejectedByFeitHigman: return "rejected-by-feit-higman";
    case ErrorKind::UnsupportedBoundary: return "unsupported-boundary";
    case ErrorKind::SingularPoint: return "singular-point";
    case ErrorKind::NotABuilding: return "not-a-building";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace buildwalk
