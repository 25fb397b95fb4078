#pragma once

#include <cstdint>

#include "medaug/raster.hpp"

namespace medaug {

struct GeometricParams {
  double scale_factor = 1.2;
  int translate_dx = 20;
  int translate_dy = 30;
  double shear_k = 0.2;
  std::uint8_t fill_value = 0;
};

/// Lossless quarter turn clockwise: input (r, c) lands at output (c, H-1-r).
ImageBuffer rotate90_cw(const ImageBuffer& image);
BinaryMask rotate90_cw(const BinaryMask& mask);

/// Bilinear resize to max(1, round(dim * factor)) per axis.
///
/// Each output coordinate maps back through src = (dst + 0.5) / factor - 0.5.
/// Neighbour indices are clamped to the nearest edge pixel. Interpolation is
/// done as two horizontal lerps a + (b - a) * fx followed by one vertical
/// lerp, then quantized through clamp_round. Throws InvalidFactor.
ImageBuffer scale(const ImageBuffer& image, double factor);

/// Nearest-neighbour counterpart of scale(): source index is the rounded
/// inverse-mapped coordinate, clamped to the raster.
BinaryMask scale_mask(const BinaryMask& mask, double factor);

/// Output dimension for one axis under scale().
int scaled_extent(int extent, double factor);

/// Positive dx moves content right, positive dy moves it down; vacated
/// pixels take `fill`.
ImageBuffer translate(const ImageBuffer& image, int dx, int dy, std::uint8_t fill = 0);
BinaryMask translate(const BinaryMask& mask, int dx, int dy);

/// Horizontal shear with forward matrix [[1, k], [0, 1]]: output (x, y)
/// samples the source at x - k*y on the same row. Source positions outside
/// [0, W-1] take `fill`; inside, the two neighbours are lerped.
ImageBuffer shear_horizontal(const ImageBuffer& image, double k, std::uint8_t fill = 0);
/// Same mapping and bounds rule as the image kernel, nearest-neighbour sampled.
BinaryMask shear_horizontal(const BinaryMask& mask, double k);

ImageBuffer flip_horizontal(const ImageBuffer& image);
BinaryMask flip_horizontal(const BinaryMask& mask);

/// Central window with offset floor((dim - target) / 2). Throws TargetTooLarge.
ImageBuffer crop_center(const ImageBuffer& image, int target_w, int target_h);
BinaryMask crop_center(const BinaryMask& mask, int target_w, int target_h);

}  // namespace medaug
