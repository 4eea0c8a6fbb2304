#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace buildwalk {

/// Failure categories shared by every module. The CLI maps these onto the
/// machine-readable error object it prints.
enum class ErrorKind {
  InvalidInput,
  InvalidWalk,
  GroupTooLarge,
  RejectedByFeitHigman,
  UnsupportedBoundary,
  SingularPoint,
  NotABuilding,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace buildwalk
