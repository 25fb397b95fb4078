#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "medaug/raster.hpp"
#include "medaug/rng.hpp"

namespace medaug {

struct PhotometricParams {
  int brightness_delta = 40;
  double contrast_factor = 1.5;
  double noise_sigma = 10.0;
  double noise_mean = 0.0;
};

using Lut = std::array<std::uint8_t, 256>;
using Histogram = std::array<std::uint64_t, 256>;

Lut brightness_lut(int delta);
/// (v - 127.5) * factor + 127.5, quantized. Throws InvalidFactor.
Lut contrast_lut(double factor);

/// Discrete equalization LUT: 255 * (cdf(v) - cdf_min) / (N - cdf_min),
/// where cdf_min is the smallest nonzero cumulative count. Returns nullopt
/// for a single-valued (or empty) histogram, which callers treat as identity.
std::optional<Lut> equalization_lut(const Histogram& histogram);

Histogram histogram(const ImageBuffer& gray);

/// Applies the same LUT to every sample (all channels).
ImageBuffer apply_lut(const ImageBuffer& image, const Lut& lut);

ImageBuffer adjust_brightness(const ImageBuffer& image, int delta);
ImageBuffer adjust_contrast(const ImageBuffer& image, double factor);

/// Adds one Gaussian draw per sample, consumed in row-major, channel-minor
/// order from `stream`. The stream is sequential, so this kernel is serial;
/// batches parallelize across images instead.
ImageBuffer add_gaussian_noise(const ImageBuffer& image, RngStream& stream, double mean, double sigma);

/// Histogram-equalizes BT.601 luma and keeps chroma untouched. Gray images
/// are equalized directly. Constant images come back unchanged.
ImageBuffer equalize_histogram_luma(const ImageBuffer& image);

}  // namespace medaug
