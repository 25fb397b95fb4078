#include "medaug/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace medaug {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ChannelMismatch: return "ChannelMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidFactor: return "InvalidFactor";
    case ErrorCode::InvalidSigma: return "InvalidSigma";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::TargetTooLarge: return "TargetTooLarge";
    case ErrorCode::DatasetTooSmall: return "DatasetTooSmall";
    case ErrorCode::HeterogeneousDims: return "HeterogeneousDims";
    case ErrorCode::EmptyEvaluationSet: return "EmptyEvaluationSet";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MissingDirectory: return "MissingDirectory";
    case ErrorCode::UnpairedMask: return "UnpairedMask";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::EmptyRoster: return "EmptyRoster";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Decode: return "Decode";
  }
  return "Unknown";
}

std::uint8_t clamp_round(double v) noexcept {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  // std::round rounds halfway cases away from zero.
  return static_cast<std::uint8_t>(std::round(v));
}

namespace {

void check_geometry(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "raster dimensions must be positive, got " +
                                                std::to_string(width) + "x" +
                                                std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::ChannelMismatch,
                "channels must be 1 or 3, got " + std::to_string(channels));
  }
}

std::size_t expected_size(int width, int height, int channels) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
         static_cast<std::size_t>(channels);
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  check_geometry(width, height, channels);
  samples_.assign(expected_size(width, height, channels), fill);
}

ImageBuffer::ImageBuffer(int width, int height, int channels, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), channels_(channels), samples_(std::move(samples)) {
  check_geometry(width, height, channels);
  if (samples_.size() != expected_size(width, height, channels)) {
    throw Error(ErrorCode::InvalidArgument,
                "sample count " + std::to_string(samples_.size()) + " does not match " +
                    std::to_string(width) + "x" + std::to_string(height) + "x" +
                    std::to_string(channels));
  }
}

BinaryMask::BinaryMask(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_geometry(width, height, 1);
  if (fill != kForeground && fill != kBackground) {
    throw Error(ErrorCode::InvalidArgument, "mask fill must be 0 or 255");
  }
  samples_.assign(expected_size(width, height, 1), fill);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  check_geometry(width, height, 1);
  if (samples_.size() != expected_size(width, height, 1)) {
    throw Error(ErrorCode::InvalidArgument, "mask sample count does not match dimensions");
  }
  const bool binary = std::all_of(samples_.begin(), samples_.end(), [](std::uint8_t v) {
    return v == kForeground || v == kBackground;
  });
  if (!binary) throw Error(ErrorCode::InvalidArgument, "mask samples must be 0 or 255");
}

BinaryMask BinaryMask::from_gray(const ImageBuffer& gray, std::uint8_t threshold) {
  if (gray.channels() != 1) {
    throw Error(ErrorCode::ChannelMismatch, "mask source must be single-channel");
  }
  std::vector<std::uint8_t> out(gray.size());
  const auto in = gray.samples();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = in[i] >= threshold ? kForeground : kBackground;
  }
  return BinaryMask(gray.width(), gray.height(), std::move(out));
}

ImageBuffer BinaryMask::as_image() const { return ImageBuffer(width_, height_, 1, samples_); }

BinaryMask BinaryMask::from_binary_image(const ImageBuffer& image) {
  if (image.channels() != 1) {
    throw Error(ErrorCode::ChannelMismatch, "mask image must be single-channel");
  }
  const auto s = image.samples();
  return BinaryMask(image.width(), image.height(), std::vector<std::uint8_t>(s.begin(), s.end()));
}

SamplePair::SamplePair(ImageBuffer img, BinaryMask m) : image(std::move(img)), mask(std::move(m)) {
  if (image.width() != mask.width() || image.height() != mask.height()) {
    throw Error(ErrorCode::DimensionMismatch, "image and mask dimensions differ");
  }
}

void require_same_dims(const ImageBuffer& a, const ImageBuffer& b, const char* what) {
  if (a.width() != b.width() || a.height() != b.height() || a.channels() != b.channels()) {
    throw Error(ErrorCode::DimensionMismatch, what);
  }
}

LumaChroma rgb_to_luma(const ImageBuffer& rgb) {
  if (rgb.channels() != 3) {
    throw Error(ErrorCode::ChannelMismatch, "rgb_to_luma requires a 3-channel image");
  }
  const auto n = static_cast<std::ptrdiff_t>(rgb.pixel_count());
  ImageBuffer luma(rgb.width(), rgb.height(), 1);
  ChromaPlanes chroma{rgb.width(), rgb.height(), std::vector<double>(n), std::vector<double>(n)};
  const std::uint8_t* src = rgb.data();
  std::uint8_t* y = luma.data();

#pragma omp parallel for schedule(static) if (n > 16384)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double r = src[3 * i];
    const double g = src[3 * i + 1];
    const double b = src[3 * i + 2];
    y[i] = clamp_round(0.299 * r + 0.587 * g + 0.114 * b);
    chroma.cb[i] = -0.168736 * r - 0.331264 * g + 0.5 * b + 128.0;
    chroma.cr[i] = 0.5 * r - 0.418688 * g - 0.081312 * b + 128.0;
  }
  return {std::move(luma), std::move(chroma)};
}

ImageBuffer luma_to_rgb(const ImageBuffer& luma, const ChromaPlanes& chroma) {
  if (luma.channels() != 1) {
    throw Error(ErrorCode::ChannelMismatch, "luma plane must be single-channel");
  }
  const auto n = luma.pixel_count();
  if (chroma.width != luma.width() || chroma.height != luma.height() || chroma.cb.size() != n ||
      chroma.cr.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "luma and chroma planes differ in size");
  }
  ImageBuffer rgb(luma.width(), luma.height(), 3);
  const std::uint8_t* y = luma.data();
  std::uint8_t* dst = rgb.data();
  const auto count = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(static) if (count > 16384)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const double yy = y[i];
    const double cb = chroma.cb[i] - 128.0;
    const double cr = chroma.cr[i] - 128.0;
    dst[3 * i] = clamp_round(yy + 1.402 * cr);
    dst[3 * i + 1] = clamp_round(yy - 0.344136 * cb - 0.714136 * cr);
    dst[3 * i + 2] = clamp_round(yy + 1.772 * cb);
  }
  return rgb;
}

}  // namespace medaug
