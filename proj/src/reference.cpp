#include "medaug/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "medaug/geometric.hpp"

namespace medaug::reference {

ImageBuffer scale(const ImageBuffer& image, double factor) {
  const int out_w = scaled_extent(image.width(), factor);
  const int out_h = scaled_extent(image.height(), factor);
  ImageBuffer out(out_w, out_h, image.channels());
  for (int r = 0; r < out_h; ++r) {
    const double sy = (r + 0.5) / factor - 0.5;
    const double fy0 = std::floor(sy);
    const int y0 = std::clamp(static_cast<int>(fy0), 0, image.height() - 1);
    const int y1 = std::clamp(static_cast<int>(fy0) + 1, 0, image.height() - 1);
    for (int c = 0; c < out_w; ++c) {
      const double sx = (c + 0.5) / factor - 0.5;
      const double fx0 = std::floor(sx);
      const int x0 = std::clamp(static_cast<int>(fx0), 0, image.width() - 1);
      const int x1 = std::clamp(static_cast<int>(fx0) + 1, 0, image.width() - 1);
      for (int k = 0; k < image.channels(); ++k) {
        const double top = image.at(y0, x0, k) + (double(image.at(y0, x1, k)) - image.at(y0, x0, k)) * (sx - fx0);
        const double bot = image.at(y1, x0, k) + (double(image.at(y1, x1, k)) - image.at(y1, x0, k)) * (sx - fx0);
        out.at(r, c, k) = clamp_round(top + (bot - top) * (sy - fy0));
      }
    }
  }
  return out;
}

ImageBuffer shear_horizontal(const ImageBuffer& image, double k, std::uint8_t fill) {
  ImageBuffer out(image.width(), image.height(), image.channels(), fill);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const double src = x - k * y;
      if (src < 0.0 || src > image.width() - 1) continue;
      const double base = std::floor(src);
      const int x0 = static_cast<int>(base);
      const int x1 = std::min(x0 + 1, image.width() - 1);
      for (int c = 0; c < image.channels(); ++c) {
        const double p0 = image.at(y, x0, c);
        out.at(y, x, c) = clamp_round(p0 + (image.at(y, x1, c) - p0) * (src - base));
      }
    }
  }
  return out;
}

ImageBuffer rotate90_cw(const ImageBuffer& image) {
  ImageBuffer out(image.height(), image.width(), image.channels());
  for (int r = 0; r < image.height(); ++r)
    for (int c = 0; c < image.width(); ++c)
      for (int k = 0; k < image.channels(); ++k) out.at(c, image.height() - 1 - r, k) = image.at(r, c, k);
  return out;
}

ImageBuffer flip_horizontal(const ImageBuffer& image) {
  ImageBuffer out(image.width(), image.height(), image.channels());
  for (int r = 0; r < image.height(); ++r)
    for (int c = 0; c < image.width(); ++c)
      for (int k = 0; k < image.channels(); ++k) out.at(r, c, k) = image.at(r, image.width() - 1 - c, k);
  return out;
}

ImageBuffer translate(const ImageBuffer& image, int dx, int dy, std::uint8_t fill) {
  ImageBuffer out(image.width(), image.height(), image.channels(), fill);
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      const long long sr = static_cast<long long>(r) - dy;
      const long long sc = static_cast<long long>(c) - dx;
      if (sr < 0 || sc < 0 || sr >= image.height() || sc >= image.width()) continue;
      for (int k = 0; k < image.channels(); ++k)
        out.at(r, c, k) = image.at(static_cast<int>(sr), static_cast<int>(sc), k);
    }
  }
  return out;
}

ImageBuffer equalize_histogram_luma(const ImageBuffer& image) {
  const bool color = image.channels() == 3;
  LumaChroma yc{ImageBuffer(1, 1, 1), {}};
  if (color) yc = rgb_to_luma(image);
  const ImageBuffer& y = color ? yc.luma : image;

  std::array<std::uint64_t, 256> cdf{};
  for (const auto v : y.samples()) ++cdf[v];
  for (int v = 1; v < 256; ++v) cdf[v] += cdf[v - 1];
  const auto* first = std::find_if(cdf.begin(), cdf.end(), [](std::uint64_t c) { return c != 0; });
  const std::uint64_t cdf_min = *first;
  const std::uint64_t total = cdf[255];
  if (total == cdf_min) return image;

  ImageBuffer eq(y.width(), y.height(), 1);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double num = static_cast<double>(cdf[y.samples()[i]]) - static_cast<double>(cdf_min);
    eq.samples()[i] = clamp_round(255.0 * num / static_cast<double>(total - cdf_min));
  }
  return color ? luma_to_rgb(eq, yc.chroma) : eq;
}

MixupResult mixup(const SamplePair& a, const SamplePair& b, double lambda, MixupMode mode) {
  require_same_dims(a.image, b.image, "mixup sources differ");
  const auto [wa, wb] = blend_weights(lambda);
  const int ch = a.image.channels();
  ImageBuffer image(a.image.width(), a.image.height(), ch);
  std::vector<double> soft(a.image.pixel_count());
  BinaryMask mask(a.image.width(), a.image.height());
  for (std::size_t p = 0; p < soft.size(); ++p) {
    const bool fa = a.mask.foreground(p);
    const bool fb = b.mask.foreground(p);
    const bool blend = mode == MixupMode::Global || fa;
    for (int c = 0; c < ch; ++c) {
      const std::size_t i = p * ch + c;
      image.samples()[i] =
          blend ? clamp_round(wa * a.image.samples()[i] + wb * b.image.samples()[i]) : b.image.samples()[i];
    }
    soft[p] = mode == MixupMode::Global ? wa * fa + wb * fb : std::max(fa ? wa : 0.0, fb ? 1.0 : 0.0);
    mask.set(p, soft[p] >= 0.5);
  }
  return {std::move(image), std::move(mask), std::move(soft), lambda, {0, 1}, mode};
}

double dice(const BinaryMask& pred, const BinaryMask& truth) {
  if (pred.width() != truth.width() || pred.height() != truth.height()) {
    throw Error(ErrorCode::DimensionMismatch, "prediction and truth masks differ in size");
  }
  std::uint64_t inter = 0, np = 0, nt = 0;
  for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
    np += pred.foreground(i);
    nt += truth.foreground(i);
    inter += pred.foreground(i) && truth.foreground(i);
  }
  return np + nt == 0 ? 1.0 : 2.0 * static_cast<double>(inter) / static_cast<double>(np + nt);
}

}  // namespace medaug::reference
