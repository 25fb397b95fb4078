#pragma once

// Serial, single-loop versions of the parallel kernels. They share the
// arithmetic contract documented on the production functions and exist for
// parity tests and as the benchmark baseline.

#include "medaug/mixup.hpp"
#include "medaug/raster.hpp"

namespace medaug::reference {

ImageBuffer scale(const ImageBuffer& image, double factor);
ImageBuffer shear_horizontal(const ImageBuffer& image, double k, std::uint8_t fill);
ImageBuffer rotate90_cw(const ImageBuffer& image);
ImageBuffer flip_horizontal(const ImageBuffer& image);
ImageBuffer translate(const ImageBuffer& image, int dx, int dy, std::uint8_t fill);
ImageBuffer equalize_histogram_luma(const ImageBuffer& image);
MixupResult mixup(const SamplePair& a, const SamplePair& b, double lambda, MixupMode mode);
double dice(const BinaryMask& pred, const BinaryMask& truth);

}  // namespace medaug::reference
