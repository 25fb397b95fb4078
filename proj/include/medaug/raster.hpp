#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "medaug/error.hpp"

namespace medaug {

/// Round half away from zero, then clamp to [0, 255]. Every transform that
/// produces real-valued intermediates quantizes through this function.
std::uint8_t clamp_round(double v) noexcept;

/// W x H raster with 1 (gray) or 3 (interleaved RGB) channels of 8-bit
/// samples, row-major. The constructor enforces the size invariants, so a
/// live ImageBuffer is always well-formed.
class ImageBuffer {
public:
  ImageBuffer(int width, int height, int channels, std::uint8_t fill = 0);
  ImageBuffer(int width, int height, int channels, std::vector<std::uint8_t> samples);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  std::size_t size() const noexcept { return samples_.size(); }

  std::span<const std::uint8_t> samples() const noexcept { return samples_; }
  std::span<std::uint8_t> samples() noexcept { return samples_; }
  const std::uint8_t* data() const noexcept { return samples_.data(); }
  std::uint8_t* data() noexcept { return samples_.data(); }

  std::uint8_t at(int row, int col, int ch = 0) const noexcept {
    return samples_[index(row, col, ch)];
  }
  std::uint8_t& at(int row, int col, int ch = 0) noexcept { return samples_[index(row, col, ch)]; }

  std::size_t index(int row, int col, int ch = 0) const noexcept {
    return (static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(col)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(ch);
  }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
  int width_;
  int height_;
  int channels_;
  std::vector<std::uint8_t> samples_;
};

/// Single-channel raster restricted to {0, 255}; 255 is foreground.
class BinaryMask {
public:
  static constexpr std::uint8_t kForeground = 255;
  static constexpr std::uint8_t kBackground = 0;

  BinaryMask(int width, int height, std::uint8_t fill = kBackground);
  /// Throws InvalidArgument if any sample is outside {0, 255}.
  BinaryMask(int width, int height, std::vector<std::uint8_t> samples);

  /// Threshold a gray image: sample >= threshold becomes foreground.
  static BinaryMask from_gray(const ImageBuffer& gray, std::uint8_t threshold = 128);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return samples_.size(); }

  std::span<const std::uint8_t> samples() const noexcept { return samples_; }
  bool foreground(std::size_t i) const noexcept { return samples_[i] == kForeground; }
  bool foreground(int row, int col) const noexcept {
    return samples_[static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
                    static_cast<std::size_t>(col)] == kForeground;
  }
  void set(std::size_t i, bool fg) noexcept { samples_[i] = fg ? kForeground : kBackground; }

  /// Gray 1-channel view of the mask, used to reuse interpolation-free image kernels.
  ImageBuffer as_image() const;
  /// Inverse of as_image() for images already known to hold only {0, 255}.
  static BinaryMask from_binary_image(const ImageBuffer& image);

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
  int width_;
  int height_;
  std::vector<std::uint8_t> samples_;
};

struct SamplePair {
  SamplePair(ImageBuffer img, BinaryMask m);

  ImageBuffer image;
  BinaryMask mask;
};

/// Real-valued chroma planes kept between the forward and inverse BT.601
/// conversions so that only Y is quantized.
struct ChromaPlanes {
  int width = 0;
  int height = 0;
  std::vector<double> cb;
  std::vector<double> cr;
};

struct LumaChroma {
  ImageBuffer luma;
  ChromaPlanes chroma;
};

/// BT.601 full-range RGB -> (Y, Cb, Cr). Y is quantized, chroma is not.
LumaChroma rgb_to_luma(const ImageBuffer& rgb);

/// BT.601 inverse; each channel passes through clamp_round.
ImageBuffer luma_to_rgb(const ImageBuffer& luma, const ChromaPlanes& chroma);

void require_same_dims(const ImageBuffer& a, const ImageBuffer& b, const char* what);

}  // namespace medaug
