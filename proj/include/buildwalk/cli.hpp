#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace buildwalk::cli {

/// Resolved run parameters. Unset fields stay empty; each subcommand checks
/// the ones it needs.
struct RunConfig {
  std::string command;
  std::optional<int> m;
  std::optional<std::string> q;
  std::optional<std::string> r;
  std::optional<int> n;
  std::optional<std::string> grid;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> kind;
  std::optional<std::vector<int>> k;

  nlohmann::json to_json() const;
  /// Fills every unset field from a JSON object with the same keys.
  void merge_defaults(const nlohmann::json& j);
};

/// Usage problems: bad flags, missing parameters, unsupported formats.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> subcommands();

/// Runs a resolved config, writing the report to `out` (or to config.out).
/// Throws UsageError or buildwalk::Error.
void run(const RunConfig& config, std::ostream& out);

/// Full entry point: parses args (without the program name), returns the
/// process exit code. 0 success, 1 domain error (JSON object on `out`),
/// 2 usage error (message on `err`).
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace buildwalk::cli
