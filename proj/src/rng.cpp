#include "medaug/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "medaug/error.hpp"

namespace medaug {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
    : master_seed_(master_seed), stream_index_(stream_index) {
  std::uint64_t x = master_seed ^ (stream_index * 0x9E3779B97F4A7C15ULL);
  for (auto& word : state_) word = splitmix64(x);
}

std::uint64_t RngStream::next_u64() noexcept {
  auto& s = state_;
  const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
  const std::uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = rotl(s[3], 45);
  return result;
}

double RngStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_positive() noexcept {
  double u = uniform();
  while (u == 0.0) u = uniform();
  return u;
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) noexcept {
  const auto idx = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  return idx < n ? idx : n - 1;
}

double sample_gaussian(RngStream& stream, double mean, double sigma) {
  if (!(sigma >= 0.0)) {
    throw Error(ErrorCode::InvalidSigma, "sigma must be >= 0, got " + std::to_string(sigma));
  }
  const double u1 = stream.uniform_positive();
  const double u2 = stream.uniform();
  if (sigma == 0.0) return mean;
  return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_beta_counted(RngStream& stream, double alpha, int& attempts) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw Error(ErrorCode::InvalidAlpha, "alpha must be in (0, 1], got " + std::to_string(alpha));
  }
  const double inv = 1.0 / alpha;
  attempts = 0;
  for (;;) {
    ++attempts;
    const double x = std::pow(stream.uniform(), inv);
    const double y = std::pow(stream.uniform(), inv);
    const double sum = x + y;
    if (sum <= 1.0 && sum > 0.0) return x / sum;
  }
}

double sample_beta(RngStream& stream, double alpha) {
  int attempts = 0;
  return sample_beta_counted(stream, alpha, attempts);
}

}  // namespace medaug
