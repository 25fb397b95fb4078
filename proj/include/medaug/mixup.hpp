#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "medaug/raster.hpp"

namespace medaug {

enum class MixupMode { Global, Composite };

std::string_view to_string(MixupMode mode) noexcept;
/// Parses "global" / "composite"; throws InvalidArgument otherwise.
MixupMode parse_mixup_mode(std::string_view text);

struct MixupResult {
  ImageBuffer image;
  BinaryMask mask;
  std::vector<double> soft_mask;
  double lambda = 0.0;
  std::pair<std::size_t, std::size_t> source_ids{0, 0};
  MixupMode mode = MixupMode::Global;
};

/// Blend weights (w_a, w_b) for a given lambda.
///
/// The larger weight is max(lambda, 1 - lambda) and the smaller one is
/// 1 minus it, which is exact in binary floating point. This makes
/// blend(a, b, lambda) and blend(b, a, 1 - lambda) use the same pair of
/// weights, so global mixup is bit-exactly symmetric.
std::pair<double, double> blend_weights(double lambda);

/// Whole-image convex combination of images and masks.
MixupResult mixup_global(const SamplePair& a, const SamplePair& b, double lambda);

/// Pastes a's lesion (where a's mask is foreground) with opacity lambda onto
/// b; b is kept verbatim elsewhere. soft = max(lambda * F_a, F_b).
MixupResult mixup_composite(const SamplePair& a, const SamplePair& b, double lambda);

MixupResult mixup(const SamplePair& a, const SamplePair& b, double lambda, MixupMode mode);

/// The random choices behind one generated pair.
struct MixupDraw {
  std::size_t first = 0;
  std::size_t second = 0;
  double lambda = 0.0;
};

/// Stream k of master_seed draws: first index, second index (redrawn until
/// distinct), then lambda ~ Beta(alpha, alpha).
MixupDraw draw_mixup(std::uint64_t master_seed, std::uint64_t k, std::size_t dataset_size, double alpha);

/// Generates `count` mixed pairs. Item k depends only on (dataset, k, alpha,
/// mode, master_seed), so the OpenMP fan-out over k cannot change results.
std::vector<MixupResult> generate_mixup_set(const std::vector<SamplePair>& dataset, std::size_t count,
                                            double alpha, MixupMode mode, std::uint64_t master_seed);

}  // namespace medaug
