#include "medaug/metrics.hpp"

namespace medaug {

double dice(const BinaryMask& pred, const BinaryMask& truth) {
  if (pred.width() != truth.width() || pred.height() != truth.height()) {
    throw Error(ErrorCode::DimensionMismatch, "prediction and truth masks differ in size");
  }
  const auto p = pred.samples();
  const auto t = truth.samples();
  std::uint64_t inter = 0;
  std::uint64_t np = 0;
  std::uint64_t nt = 0;
  const auto n = static_cast<std::ptrdiff_t>(p.size());
#pragma omp parallel for reduction(+ : inter, np, nt) schedule(static) if (n > (1 << 16))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const bool a = p[i] == BinaryMask::kForeground;
    const bool b = t[i] == BinaryMask::kForeground;
    np += a;
    nt += b;
    inter += a && b;
  }
  if (np + nt == 0) return 1.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(np + nt);
}

DiceReport mean_dice(std::span<const EvaluationPair> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::EmptyEvaluationSet, "no prediction/truth pairs");
  DiceReport report;
  report.per_item.reserve(pairs.size());
  double sum = 0.0;
  for (const auto& item : pairs) {
    if (item.pred.width() != item.truth.width() || item.pred.height() != item.truth.height()) {
      throw Error(ErrorCode::DimensionMismatch, "item '" + item.id + "': prediction is " +
                                                    std::to_string(item.pred.width()) + "x" +
                                                    std::to_string(item.pred.height()) +
                                                    ", truth is " +
                                                    std::to_string(item.truth.width()) + "x" +
                                                    std::to_string(item.truth.height()));
    }
    const double d = dice(item.pred, item.truth);
    report.per_item.push_back({item.id, d});
    sum += d;
  }
  report.mean_dice = sum / static_cast<double>(pairs.size());
  return report;
}

BinaryMask binarize_prediction(const ImageBuffer& gray, std::uint8_t threshold) {
  if (gray.channels() != 1) {
    throw Error(ErrorCode::ChannelMismatch, "predictions must be single-channel");
  }
  return BinaryMask::from_gray(gray, threshold);
}

ClassificationScore confusion_and_accuracy(std::span<const int> pred_labels,
                                           std::span<const int> true_labels) {
  if (pred_labels.size() != true_labels.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(pred_labels.size()) + " predictions vs " +
                                               std::to_string(true_labels.size()) + " labels");
  }
  if (pred_labels.empty()) throw Error(ErrorCode::EmptyInput, "no labels to score");
  ClassificationScore score;
  auto& m = score.confusion;
  for (std::size_t i = 0; i < pred_labels.size(); ++i) {
    const int p = pred_labels[i];
    const int t = true_labels[i];
    if ((p != 0 && p != 1) || (t != 0 && t != 1)) {
      throw Error(ErrorCode::InvalidArgument, "labels must be 0 or 1 (index " + std::to_string(i) + ")");
    }
    if (p == 1 && t == 1) ++m.tp;
    else if (p == 1) ++m.fp;
    else if (t == 1) ++m.fn;
    else ++m.tn;
  }
  score.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(m.total());
  return score;
}

}  // namespace medaug
