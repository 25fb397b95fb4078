#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "medaug/raster.hpp"

namespace medaug {

/// 2|A n B| / (|A| + |B|) over foreground sets; 1.0 when both are empty.
double dice(const BinaryMask& pred, const BinaryMask& truth);

struct DiceItem {
  std::string id;
  double dice = 0.0;
};

struct DiceReport {
  std::vector<DiceItem> per_item;
  double mean_dice = 0.0;
};

struct EvaluationPair {
  std::string id;
  BinaryMask pred;
  BinaryMask truth;
};

/// Per-item Dice and their arithmetic mean. Throws EmptyEvaluationSet on an
/// empty list, DimensionMismatch naming the first offending item.
DiceReport mean_dice(std::span<const EvaluationPair> pairs);

BinaryMask binarize_prediction(const ImageBuffer& gray, std::uint8_t threshold = 128);

struct ConfusionMatrix2 {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionMatrix2&, const ConfusionMatrix2&) = default;
};

struct ClassificationScore {
  ConfusionMatrix2 confusion;
  double accuracy = 0.0;
};

/// Labels are 0/1 with 1 as the positive class.
ClassificationScore confusion_and_accuracy(std::span<const int> pred_labels,
                                           std::span<const int> true_labels);

}  // namespace medaug
