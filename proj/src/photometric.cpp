#include "medaug/photometric.hpp"

#include <cmath>
#include <string>

namespace medaug {

Lut brightness_lut(int delta) {
  Lut lut{};
  for (int v = 0; v < 256; ++v) lut[v] = clamp_round(static_cast<double>(v) + delta);
  return lut;
}

Lut contrast_lut(double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::InvalidFactor, "contrast factor must be finite and > 0, got " +
                                              std::to_string(factor));
  }
  Lut lut{};
  for (int v = 0; v < 256; ++v) lut[v] = clamp_round((v - 127.5) * factor + 127.5);
  return lut;
}

Histogram histogram(const ImageBuffer& gray) {
  if (gray.channels() != 1) throw Error(ErrorCode::ChannelMismatch, "histogram needs one channel");
  Histogram h{};
  for (const std::uint8_t v : gray.samples()) ++h[v];
  return h;
}

std::optional<Lut> equalization_lut(const Histogram& histogram) {
  std::array<std::uint64_t, 256> cdf{};
  std::uint64_t running = 0;
  std::uint64_t cdf_min = 0;
  for (int v = 0; v < 256; ++v) {
    running += histogram[v];
    cdf[v] = running;
    if (cdf_min == 0 && running != 0) cdf_min = running;
  }
  const std::uint64_t total = running;
  if (total == cdf_min) return std::nullopt;
  const double denom = static_cast<double>(total - cdf_min);
  Lut lut{};
  for (int v = 0; v < 256; ++v) {
    // Bins below the first occupied one have cdf 0; they never occur in the
    // image, and clamp_round sends their negative value to 0.
    lut[v] = clamp_round(255.0 * (static_cast<double>(cdf[v]) - static_cast<double>(cdf_min)) / denom);
  }
  return lut;
}

ImageBuffer apply_lut(const ImageBuffer& image, const Lut& lut) {
  ImageBuffer out(image.width(), image.height(), image.channels());
  const std::uint8_t* src = image.data();
  std::uint8_t* dst = out.data();
  const auto n = static_cast<std::ptrdiff_t>(image.size());
#pragma omp parallel for schedule(static) if (n > (1 << 15))
  for (std::ptrdiff_t i = 0; i < n; ++i) dst[i] = lut[src[i]];
  return out;
}

ImageBuffer adjust_brightness(const ImageBuffer& image, int delta) {
  return apply_lut(image, brightness_lut(delta));
}

ImageBuffer adjust_contrast(const ImageBuffer& image, double factor) {
  return apply_lut(image, contrast_lut(factor));
}

ImageBuffer add_gaussian_noise(const ImageBuffer& image, RngStream& stream, double mean, double sigma) {
  if (!(sigma >= 0.0)) {
    throw Error(ErrorCode::InvalidSigma, "sigma must be >= 0, got " + std::to_string(sigma));
  }
  ImageBuffer out(image.width(), image.height(), image.channels());
  const auto src = image.samples();
  auto dst = out.samples();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = clamp_round(src[i] + sample_gaussian(stream, mean, sigma));
  }
  return out;
}

ImageBuffer equalize_histogram_luma(const ImageBuffer& image) {
  if (image.channels() == 1) {
    const auto lut = equalization_lut(histogram(image));
    return lut ? apply_lut(image, *lut) : image;
  }
  LumaChroma yc = rgb_to_luma(image);
  const auto lut = equalization_lut(histogram(yc.luma));
  if (!lut) return image;
  return luma_to_rgb(apply_lut(yc.luma, *lut), yc.chroma);
}

}  // namespace medaug
