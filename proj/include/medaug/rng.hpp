#pragma once

#include <array>
#include <cstdint>

namespace medaug {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// splitmix64 step: advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// xoshiro256** stream keyed by (master_seed, stream_index).
///
/// The 256-bit state is four successive splitmix64 outputs starting from
/// master_seed ^ (stream_index * 0x9E3779B97F4A7C15). Uniform doubles take
/// the top 53 bits of one 64-bit output, so they lie in [0, 1).
class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept;

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;
  /// Uniform in (0, 1); redraws on an exact zero.
  double uniform_positive() noexcept;
  /// floor(uniform() * n) for n >= 1. Consumes exactly one output.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }
  const std::array<std::uint64_t, 4>& state() const noexcept { return state_; }

private:
  std::array<std::uint64_t, 4> state_;
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
};

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept {
  return RngStream(master_seed, stream_index);
}

/// Box-Muller, cosine branch only: two uniforms per sample (u1 > 0, redrawn
/// on zero), the sine partner is discarded. Throws InvalidSigma on sigma < 0.
double sample_gaussian(RngStream& stream, double mean, double sigma);

/// Symmetric Beta(alpha, alpha) via Johnk's rejection method, 0 < alpha <= 1.
/// Each attempt consumes two uniforms; attempts repeat until
/// u^(1/alpha) + v^(1/alpha) lies in (0, 1].
double sample_beta(RngStream& stream, double alpha);

/// Same as sample_beta but reports how many attempts were needed.
double sample_beta_counted(RngStream& stream, double alpha, int& attempts);

struct MixupParams {
  double alpha = 0.4;
};

}  // namespace medaug
