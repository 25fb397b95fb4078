#include "medaug/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace medaug {

namespace {

// Rows below this many samples run single-threaded; thread start-up costs
// more than the work.
constexpr std::ptrdiff_t kParallelThreshold = 1 << 14;

void check_factor(double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::InvalidFactor, "scale factor must be finite and > 0, got " +
                                              std::to_string(factor));
  }
}

struct Tap {
  int lo;
  int hi;
  double frac;
};

// Edge-clamped bilinear taps for every output position along one axis.
std::vector<Tap> bilinear_taps(int out_extent, int in_extent, double factor) {
  std::vector<Tap> taps(static_cast<std::size_t>(out_extent));
  for (int d = 0; d < out_extent; ++d) {
    const double src = (d + 0.5) / factor - 0.5;
    const double base = std::floor(src);
    const int i0 = static_cast<int>(base);
    taps[d] = {std::clamp(i0, 0, in_extent - 1), std::clamp(i0 + 1, 0, in_extent - 1), src - base};
  }
  return taps;
}

std::vector<int> nearest_taps(int out_extent, int in_extent, double factor) {
  std::vector<int> taps(static_cast<std::size_t>(out_extent));
  for (int d = 0; d < out_extent; ++d) {
    const double src = (d + 0.5) / factor - 0.5;
    taps[d] = std::clamp(static_cast<int>(std::round(src)), 0, in_extent - 1);
  }
  return taps;
}

}  // namespace

int scaled_extent(int extent, double factor) {
  check_factor(factor);
  return std::max(1, static_cast<int>(std::round(extent * factor)));
}

ImageBuffer rotate90_cw(const ImageBuffer& image) {
  const int w = image.width();
  const int h = image.height();
  const int ch = image.channels();
  ImageBuffer out(h, w, ch);
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(image.size()) > kParallelThreshold)
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < ch; ++k) out.at(c, h - 1 - r, k) = image.at(r, c, k);
    }
  }
  return out;
}

BinaryMask rotate90_cw(const BinaryMask& mask) {
  return BinaryMask::from_binary_image(rotate90_cw(mask.as_image()));
}

ImageBuffer scale(const ImageBuffer& image, double factor) {
  const int out_w = scaled_extent(image.width(), factor);
  const int out_h = scaled_extent(image.height(), factor);
  const int ch = image.channels();
  const auto xs = bilinear_taps(out_w, image.width(), factor);
  const auto ys = bilinear_taps(out_h, image.height(), factor);
  ImageBuffer out(out_w, out_h, ch);

  const std::ptrdiff_t work = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (work > kParallelThreshold)
  for (int r = 0; r < out_h; ++r) {
    const Tap ty = ys[r];
    for (int c = 0; c < out_w; ++c) {
      const Tap tx = xs[c];
      for (int k = 0; k < ch; ++k) {
        const double p00 = image.at(ty.lo, tx.lo, k);
        const double p01 = image.at(ty.lo, tx.hi, k);
        const double p10 = image.at(ty.hi, tx.lo, k);
        const double p11 = image.at(ty.hi, tx.hi, k);
        const double top = p00 + (p01 - p00) * tx.frac;
        const double bottom = p10 + (p11 - p10) * tx.frac;
        out.at(r, c, k) = clamp_round(top + (bottom - top) * ty.frac);
      }
    }
  }
  return out;
}

BinaryMask scale_mask(const BinaryMask& mask, double factor) {
  const int out_w = scaled_extent(mask.width(), factor);
  const int out_h = scaled_extent(mask.height(), factor);
  const auto xs = nearest_taps(out_w, mask.width(), factor);
  const auto ys = nearest_taps(out_h, mask.height(), factor);
  BinaryMask out(out_w, out_h);
  for (int r = 0; r < out_h; ++r) {
    for (int c = 0; c < out_w; ++c) {
      out.set(static_cast<std::size_t>(r) * out_w + c, mask.foreground(ys[r], xs[c]));
    }
  }
  return out;
}

ImageBuffer translate(const ImageBuffer& image, int dx, int dy, std::uint8_t fill) {
  const int w = image.width();
  const int h = image.height();
  const int ch = image.channels();
  ImageBuffer out(w, h, ch, fill);
  // Destination columns [c_begin, c_end) read from c - dx, which stays in range.
  const long long c_begin = std::clamp<long long>(dx, 0, w);
  const long long c_end = std::clamp<long long>(static_cast<long long>(w) + dx, 0, w);
  if (c_begin >= c_end) return out;
  const std::size_t run = static_cast<std::size_t>(c_end - c_begin) * ch;
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(image.size()) > kParallelThreshold)
  for (int r = 0; r < h; ++r) {
    const long long src_r = static_cast<long long>(r) - dy;
    if (src_r < 0 || src_r >= h) continue;
    std::memcpy(&out.at(r, static_cast<int>(c_begin)),
                image.data() + image.index(static_cast<int>(src_r), static_cast<int>(c_begin - dx)), run);
  }
  return out;
}

BinaryMask translate(const BinaryMask& mask, int dx, int dy) {
  return BinaryMask::from_binary_image(translate(mask.as_image(), dx, dy, BinaryMask::kBackground));
}

ImageBuffer shear_horizontal(const ImageBuffer& image, double k, std::uint8_t fill) {
  if (!std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "shear coefficient must be finite");
  const int w = image.width();
  const int h = image.height();
  const int ch = image.channels();
  ImageBuffer out(w, h, ch, fill);
  const double max_x = w - 1;
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(image.size()) > kParallelThreshold)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double src = x - k * y;
      if (src < 0.0 || src > max_x) continue;
      const double base = std::floor(src);
      const int x0 = static_cast<int>(base);
      const int x1 = std::min(x0 + 1, w - 1);
      const double frac = src - base;
      for (int c = 0; c < ch; ++c) {
        const double p0 = image.at(y, x0, c);
        const double p1 = image.at(y, x1, c);
        out.at(y, x, c) = clamp_round(p0 + (p1 - p0) * frac);
      }
    }
  }
  return out;
}

BinaryMask shear_horizontal(const BinaryMask& mask, double k) {
  if (!std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "shear coefficient must be finite");
  const int w = mask.width();
  const int h = mask.height();
  BinaryMask out(w, h);
  const double max_x = w - 1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double src = x - k * y;
      if (src < 0.0 || src > max_x) continue;
      const int xs = std::clamp(static_cast<int>(std::round(src)), 0, w - 1);
      out.set(static_cast<std::size_t>(y) * w + x, mask.foreground(y, xs));
    }
  }
  return out;
}

ImageBuffer flip_horizontal(const ImageBuffer& image) {
  const int w = image.width();
  const int h = image.height();
  const int ch = image.channels();
  ImageBuffer out(w, h, ch);
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(image.size()) > kParallelThreshold)
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < ch; ++k) out.at(r, c, k) = image.at(r, w - 1 - c, k);
    }
  }
  return out;
}

BinaryMask flip_horizontal(const BinaryMask& mask) {
  return BinaryMask::from_binary_image(flip_horizontal(mask.as_image()));
}

ImageBuffer crop_center(const ImageBuffer& image, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1 || target_w > image.width() || target_h > image.height()) {
    throw Error(ErrorCode::TargetTooLarge,
                "crop " + std::to_string(target_w) + "x" + std::to_string(target_h) +
                    " does not fit in " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()));
  }
  const int off_x = (image.width() - target_w) / 2;
  const int off_y = (image.height() - target_h) / 2;
  const int ch = image.channels();
  ImageBuffer out(target_w, target_h, ch);
  const std::size_t run = static_cast<std::size_t>(target_w) * ch;
  for (int r = 0; r < target_h; ++r) {
    std::memcpy(&out.at(r, 0), image.data() + image.index(r + off_y, off_x), run);
  }
  return out;
}

BinaryMask crop_center(const BinaryMask& mask, int target_w, int target_h) {
  return BinaryMask::from_binary_image(crop_center(mask.as_image(), target_w, target_h));
}

}  // namespace medaug
