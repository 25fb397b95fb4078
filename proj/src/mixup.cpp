#include "medaug/mixup.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "medaug/rng.hpp"

namespace medaug {

std::string_view to_string(MixupMode mode) noexcept {
  return mode == MixupMode::Global ? "global" : "composite";
}

MixupMode parse_mixup_mode(std::string_view text) {
  if (text == "global") return MixupMode::Global;
  if (text == "composite") return MixupMode::Composite;
  throw Error(ErrorCode::InvalidArgument, "unknown mixup mode '" + std::string(text) + "'");
}

std::pair<double, double> blend_weights(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::InvalidLambda, "lambda must be in [0, 1], got " + std::to_string(lambda));
  }
  if (lambda >= 0.5) return {lambda, 1.0 - lambda};
  const double hi = 1.0 - lambda;
  return {1.0 - hi, hi};
}

namespace {

void check_pair_dims(const SamplePair& a, const SamplePair& b) {
  if (a.image.width() != b.image.width() || a.image.height() != b.image.height() ||
      a.image.channels() != b.image.channels()) {
    throw Error(ErrorCode::DimensionMismatch,
                "mixup sources differ: " + std::to_string(a.image.width()) + "x" +
                    std::to_string(a.image.height()) + "x" + std::to_string(a.image.channels()) +
                    " vs " + std::to_string(b.image.width()) + "x" +
                    std::to_string(b.image.height()) + "x" + std::to_string(b.image.channels()));
  }
}

BinaryMask threshold_soft(int width, int height, const std::vector<double>& soft) {
  BinaryMask mask(width, height);
  for (std::size_t i = 0; i < soft.size(); ++i) mask.set(i, soft[i] >= 0.5);
  return mask;
}

}  // namespace

MixupResult mixup_global(const SamplePair& a, const SamplePair& b, double lambda) {
  check_pair_dims(a, b);
  const auto [wa, wb] = blend_weights(lambda);
  const int ch = a.image.channels();
  const auto n = static_cast<std::ptrdiff_t>(a.image.pixel_count());
  ImageBuffer image(a.image.width(), a.image.height(), ch);
  std::vector<double> soft(static_cast<std::size_t>(n));
  const std::uint8_t* ia = a.image.data();
  const std::uint8_t* ib = b.image.data();
  std::uint8_t* out = image.data();

#pragma omp parallel for schedule(static) if (n > 16384)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    for (int c = 0; c < ch; ++c) {
      const std::ptrdiff_t i = p * ch + c;
      out[i] = clamp_round(wa * ia[i] + wb * ib[i]);
    }
    const double fa = a.mask.foreground(static_cast<std::size_t>(p)) ? 1.0 : 0.0;
    const double fb = b.mask.foreground(static_cast<std::size_t>(p)) ? 1.0 : 0.0;
    soft[p] = wa * fa + wb * fb;
  }
  BinaryMask mask = threshold_soft(image.width(), image.height(), soft);
  return {std::move(image), std::move(mask), std::move(soft), lambda, {0, 1}, MixupMode::Global};
}

MixupResult mixup_composite(const SamplePair& a, const SamplePair& b, double lambda) {
  check_pair_dims(a, b);
  const auto [wa, wb] = blend_weights(lambda);
  const int ch = a.image.channels();
  const auto n = static_cast<std::ptrdiff_t>(a.image.pixel_count());
  ImageBuffer image = b.image;
  std::vector<double> soft(static_cast<std::size_t>(n));
  const std::uint8_t* ia = a.image.data();
  const std::uint8_t* ib = b.image.data();
  std::uint8_t* out = image.data();

#pragma omp parallel for schedule(static) if (n > 16384)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    const bool lesion = a.mask.foreground(static_cast<std::size_t>(p));
    if (lesion) {
      for (int c = 0; c < ch; ++c) {
        const std::ptrdiff_t i = p * ch + c;
        out[i] = clamp_round(wa * ia[i] + wb * ib[i]);
      }
    }
    const double fb = b.mask.foreground(static_cast<std::size_t>(p)) ? 1.0 : 0.0;
    soft[p] = std::max(lesion ? wa : 0.0, fb);
  }
  BinaryMask mask = threshold_soft(image.width(), image.height(), soft);
  return {std::move(image), std::move(mask), std::move(soft), lambda, {0, 1}, MixupMode::Composite};
}

MixupResult mixup(const SamplePair& a, const SamplePair& b, double lambda, MixupMode mode) {
  return mode == MixupMode::Global ? mixup_global(a, b, lambda) : mixup_composite(a, b, lambda);
}

MixupDraw draw_mixup(std::uint64_t master_seed, std::uint64_t k, std::size_t dataset_size, double alpha) {
  if (dataset_size < 2) {
    throw Error(ErrorCode::DatasetTooSmall, "mixup needs at least 2 pairs, got " +
                                                std::to_string(dataset_size));
  }
  RngStream stream = derive_stream(master_seed, k);
  MixupDraw draw;
  draw.first = static_cast<std::size_t>(stream.uniform_index(dataset_size));
  do {
    draw.second = static_cast<std::size_t>(stream.uniform_index(dataset_size));
  } while (draw.second == draw.first);
  draw.lambda = sample_beta(stream, alpha);
  return draw;
}

std::vector<MixupResult> generate_mixup_set(const std::vector<SamplePair>& dataset, std::size_t count,
                                            double alpha, MixupMode mode, std::uint64_t master_seed) {
  if (dataset.size() < 2) {
    throw Error(ErrorCode::DatasetTooSmall, "mixup needs at least 2 pairs, got " +
                                                std::to_string(dataset.size()));
  }
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "mixup count must be >= 1");
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw Error(ErrorCode::InvalidAlpha, "alpha must be in (0, 1], got " + std::to_string(alpha));
  }
  const ImageBuffer& ref = dataset.front().image;
  for (std::size_t i = 1; i < dataset.size(); ++i) {
    const ImageBuffer& img = dataset[i].image;
    if (img.width() != ref.width() || img.height() != ref.height() ||
        img.channels() != ref.channels()) {
      throw Error(ErrorCode::HeterogeneousDims,
                  "pair " + std::to_string(i) + " is " + std::to_string(img.width()) + "x" +
                      std::to_string(img.height()) + "x" + std::to_string(img.channels()) +
                      ", expected " + std::to_string(ref.width()) + "x" +
                      std::to_string(ref.height()) + "x" + std::to_string(ref.channels()));
    }
  }

  std::vector<std::optional<MixupResult>> slots(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const MixupDraw d = draw_mixup(master_seed, static_cast<std::uint64_t>(k), dataset.size(), alpha);
    MixupResult r = mixup(dataset[d.first], dataset[d.second], d.lambda, mode);
    r.source_ids = {d.first, d.second};
    slots[k] = std::move(r);
  }
  std::vector<MixupResult> results;
  results.reserve(count);
  for (auto& s : slots) results.push_back(std::move(*s));
  return results;
}

}  // namespace medaug
