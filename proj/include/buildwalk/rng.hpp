#pragma once

#include <cstdint>
#include <string_view>

namespace buildwalk {

/// SplitMix64 (Steele, Lea, Flood). Version tag "splitmix64-v1".
///
/// Stream rule: trial t of a run with seed s starts from state
/// mix(s ⊕ mix(t + 0x632BE59BD9B4E019)), so each trial's draws depend only on
/// (s, t) and never on which worker runs it.
class SplitMix64 {
 public:
  static constexpr std::string_view kName = "splitmix64-v1";

  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// Uniform on [0, bound), Lemire's multiply-and-reject method.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
};

}  // namespace buildwalk
