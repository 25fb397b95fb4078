#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medaug/geometric.hpp"
#include "medaug/mixup.hpp"
#include "medaug/photometric.hpp"
#include "medaug/rng.hpp"

namespace medaug {

namespace fs = std::filesystem;

enum class Task { Classification, Segmentation };
enum class Split { Train, Test };

std::string_view to_string(Task task) noexcept;
std::string_view to_string(Split split) noexcept;
Task parse_task(std::string_view text);

struct ClassificationItem {
  fs::path path;
  std::string label;
};

struct SegmentationItem {
  fs::path image;
  fs::path mask;
  Split split = Split::Train;
};

struct DatasetManifest {
  Task task = Task::Classification;
  fs::path root;
  std::vector<std::string> labels;  // sorted; classification only
  std::vector<ClassificationItem> classified;
  std::vector<SegmentationItem> segmented;

  std::map<std::string, std::size_t> class_counts() const;
  std::vector<SegmentationItem> split_items(Split split) const;
};

/// Classification layout: one subdirectory of PNGs per class.
/// Segmentation layout: {train,test}/{images,masks} paired by file name.
/// Items are sorted byte-wise by path.
DatasetManifest scan_dataset(const fs::path& root, Task task);

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(std::string_view text);

enum class TransformId { Rotate90, FlipH, Scale, Translate, Shear, Brightness, Contrast, Noise, HistEq };

std::string_view to_string(TransformId op) noexcept;
std::optional<TransformId> parse_transform(std::string_view text) noexcept;
/// rotate90, fliph, scale, translate, shear, brightness, contrast, noise, histeq.
const std::vector<TransformId>& default_roster();
/// Comma-separated op names; throws InvalidArgument on unknown names.
std::vector<TransformId> parse_roster(std::string_view text);

struct AugmentParams {
  GeometricParams geometric;
  PhotometricParams photometric;
};

/// Runs one roster op. `stream` is only consumed by Noise. Scale here is the
/// true resize; the pipeline adds the crop back to source size separately.
ImageBuffer apply_transform(TransformId op, const ImageBuffer& image, const AugmentParams& params,
                            RngStream& stream);

/// Pipeline form of an op: scale with factor >= 1 is cropped back to the
/// source dimensions so augmented files match their originals.
ImageBuffer apply_augmentation(TransformId op, const ImageBuffer& image, const AugmentParams& params,
                               RngStream& stream);

struct CopyRecord {
  fs::path source;
  fs::path output;  // relative to the output root
};

struct PlanRecord {
  std::size_t source_item = 0;  // index into the manifest's items
  fs::path source;
  std::string label;
  TransformId op = TransformId::Rotate90;
  int occurrence = 0;
  std::uint64_t stream_index = 0;
  fs::path output;  // relative, "{label}/{source_stem}__{op}{occurrence}.png"
};

struct AugmentationPlan {
  std::uint64_t master_seed = kDefaultSeed;
  std::vector<CopyRecord> originals;
  std::vector<PlanRecord> records;
};

/// Tops every class up to `target` files. For class deficit d, record j uses
/// original i = j mod c at occurrence q = j div c with op
/// roster[(i + q) mod roster.size()]. stream_index is the record ordinal.
/// Throws InvalidTarget when target is 0 or below the largest class (unless
/// `force`), EmptyRoster on an empty roster.
AugmentationPlan plan_balancing(const DatasetManifest& manifest, std::size_t target,
                                const std::vector<TransformId>& roster, std::uint64_t master_seed,
                                bool force = false);

/// Parses "{stem}__{op}{occurrence}.png" back to its provenance.
struct Provenance {
  std::string source_stem;
  TransformId op;
  int occurrence;
};
std::optional<Provenance> parse_augmented_name(std::string_view filename);

struct RecordOutcome {
  fs::path output;
  bool ok = true;
  std::string error;
};

struct ExecutionReport {
  std::vector<RecordOutcome> outcomes;  // plan order
  std::size_t succeeded = 0;
  std::size_t failed = 0;

  bool ok() const noexcept { return failed == 0; }
};

/// Writes originals and augmented records under `out_root`. Per-record
/// failures are collected in the report rather than thrown. Output does not
/// depend on `workers`.
ExecutionReport execute_plan(const AugmentationPlan& plan, const fs::path& out_root,
                             const AugmentParams& params, std::uint64_t master_seed, int workers = 0);

/// Loads image/mask pairs in the given order.
std::vector<SamplePair> load_pairs(const std::vector<SegmentationItem>& items, int workers = 0);

/// "mix_{k:04}_{i}_{j}.png"
std::string mixup_filename(std::size_t k, std::size_t i, std::size_t j);

/// Writes results as images_dir/name and masks_dir/name.
ExecutionReport write_mixup_results(const std::vector<MixupResult>& results, const fs::path& images_dir,
                                    const fs::path& masks_dir, int workers = 0);

struct ExpandOptions {
  std::size_t count = 100;
  double alpha = 0.4;
  MixupMode mode = MixupMode::Global;
  std::uint64_t master_seed = kDefaultSeed;
  int workers = 0;
};

/// Copies the source tree to `out_root` and adds `count` mixup pairs to the
/// train split. The test split is copied byte-for-byte.
ExecutionReport expand_segmentation_set(const DatasetManifest& manifest, const fs::path& out_root,
                                        const ExpandOptions& options);

}  // namespace medaug
