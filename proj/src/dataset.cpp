#include "medaug/dataset.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include <json.hpp>

#include "medaug/png_io.hpp"

namespace medaug {

namespace {

using json = nlohmann::json;

int resolve_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

bool is_png(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png";
}

std::vector<fs::path> list_pngs(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_png(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
  return files;
}

void require_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::MissingDirectory, dir.string() + " is not a directory");
}

DatasetManifest scan_classification(const fs::path& root) {
  DatasetManifest m;
  m.task = Task::Classification;
  m.root = root;
  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  }
  if (class_dirs.empty()) {
    throw Error(ErrorCode::MissingDirectory, root.string() + " has no class subdirectories");
  }
  std::sort(class_dirs.begin(), class_dirs.end(),
            [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
  for (const auto& dir : class_dirs) {
    const std::string label = dir.filename().string();
    const auto files = list_pngs(dir);
    if (files.empty()) throw Error(ErrorCode::EmptyClass, "class '" + label + "' has no PNG files");
    m.labels.push_back(label);
    for (const auto& f : files) m.classified.push_back({f, label});
  }
  std::sort(m.classified.begin(), m.classified.end(), [](const auto& a, const auto& b) {
    return a.path.generic_string() < b.path.generic_string();
  });
  return m;
}

void scan_split(const fs::path& root, Split split, std::vector<SegmentationItem>& out) {
  const fs::path base = root / std::string(to_string(split));
  const fs::path images = base / "images";
  const fs::path masks = base / "masks";
  require_dir(images);
  require_dir(masks);
  const auto image_files = list_pngs(images);
  const auto mask_files = list_pngs(masks);
  std::set<std::string> mask_names;
  for (const auto& f : mask_files) mask_names.insert(f.filename().string());
  std::set<std::string> image_names;
  for (const auto& f : image_files) {
    const std::string name = f.filename().string();
    if (!mask_names.contains(name)) {
      throw Error(ErrorCode::UnpairedMask, "image " + f.string() + " has no mask in " + masks.string());
    }
    image_names.insert(name);
    out.push_back({f, masks / name, split});
  }
  for (const auto& f : mask_files) {
    if (!image_names.contains(f.filename().string())) {
      throw Error(ErrorCode::UnpairedMask, "mask " + f.string() + " has no image in " + images.string());
    }
  }
}

DatasetManifest scan_segmentation(const fs::path& root) {
  DatasetManifest m;
  m.task = Task::Segmentation;
  m.root = root;
  scan_split(root, Split::Train, m.segmented);
  scan_split(root, Split::Test, m.segmented);
  std::sort(m.segmented.begin(), m.segmented.end(), [](const auto& a, const auto& b) {
    return a.image.generic_string() < b.image.generic_string();
  });
  return m;
}

}  // namespace

std::string_view to_string(Task task) noexcept {
  return task == Task::Classification ? "classification" : "segmentation";
}

std::string_view to_string(Split split) noexcept { return split == Split::Train ? "train" : "test"; }

Task parse_task(std::string_view text) {
  if (text == "classification") return Task::Classification;
  if (text == "segmentation") return Task::Segmentation;
  throw Error(ErrorCode::InvalidArgument, "unknown task '" + std::string(text) + "'");
}

std::map<std::string, std::size_t> DatasetManifest::class_counts() const {
  std::map<std::string, std::size_t> counts;
  for (const auto& label : labels) counts[label] = 0;
  for (const auto& item : classified) ++counts[item.label];
  return counts;
}

std::vector<SegmentationItem> DatasetManifest::split_items(Split split) const {
  std::vector<SegmentationItem> out;
  std::copy_if(segmented.begin(), segmented.end(), std::back_inserter(out),
               [split](const SegmentationItem& i) { return i.split == split; });
  return out;
}

DatasetManifest scan_dataset(const fs::path& root, Task task) {
  require_dir(root);
  return task == Task::Classification ? scan_classification(root) : scan_segmentation(root);
}

std::string manifest_to_json(const DatasetManifest& manifest) {
  json doc;
  doc["task"] = std::string(to_string(manifest.task));
  json items = json::array();
  if (manifest.task == Task::Classification) {
    for (const auto& i : manifest.classified) {
      items.push_back({{"path", i.path.generic_string()}, {"label", i.label}});
    }
  } else {
    for (const auto& i : manifest.segmented) {
      items.push_back({{"image", i.image.generic_string()},
                       {"mask", i.mask.generic_string()},
                       {"split", std::string(to_string(i.split))}});
    }
  }
  doc["items"] = std::move(items);
  return doc.dump(2);
}

DatasetManifest manifest_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
    DatasetManifest m;
    m.task = parse_task(doc.at("task").get<std::string>());
    std::set<std::string> labels;
    for (const auto& item : doc.at("items")) {
      if (m.task == Task::Classification) {
        m.classified.push_back({fs::path(item.at("path").get<std::string>()), item.at("label").get<std::string>()});
        labels.insert(m.classified.back().label);
      } else {
        const auto split = item.at("split").get<std::string>();
        if (split != "train" && split != "test") {
          throw Error(ErrorCode::InvalidArgument, "unknown split '" + split + "'");
        }
        m.segmented.push_back({fs::path(item.at("image").get<std::string>()),
                               fs::path(item.at("mask").get<std::string>()),
                               split == "train" ? Split::Train : Split::Test});
      }
    }
    m.labels.assign(labels.begin(), labels.end());
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Decode, std::string("manifest json: ") + e.what());
  }
}

std::string_view to_string(TransformId op) noexcept {
  switch (op) {
    case TransformId::Rotate90: return "rotate90";
    case TransformId::FlipH: return "fliph";
    case TransformId::Scale: return "scale";
    case TransformId::Translate: return "translate";
    case TransformId::Shear: return "shear";
    case TransformId::Brightness: return "brightness";
    case TransformId::Contrast: return "contrast";
    case TransformId::Noise: return "noise";
    case TransformId::HistEq: return "histeq";
  }
  return "unknown";
}

const std::vector<TransformId>& default_roster() {
  static const std::vector<TransformId> roster{
      TransformId::Rotate90, TransformId::FlipH,      TransformId::Scale,
      TransformId::Translate, TransformId::Shear,     TransformId::Brightness,
      TransformId::Contrast, TransformId::Noise,      TransformId::HistEq};
  return roster;
}

std::optional<TransformId> parse_transform(std::string_view text) noexcept {
  for (const TransformId op : default_roster()) {
    if (to_string(op) == text) return op;
  }
  return std::nullopt;
}

std::vector<TransformId> parse_roster(std::string_view text) {
  std::vector<TransformId> roster;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view name = text.substr(start, comma - start);
    if (!name.empty()) {
      const auto op = parse_transform(name);
      if (!op) throw Error(ErrorCode::InvalidArgument, "unknown op '" + std::string(name) + "'");
      roster.push_back(*op);
    }
    start = comma + 1;
  }
  return roster;
}

ImageBuffer apply_transform(TransformId op, const ImageBuffer& image, const AugmentParams& params,
                            RngStream& stream) {
  const auto& g = params.geometric;
  const auto& p = params.photometric;
  switch (op) {
    case TransformId::Rotate90: return rotate90_cw(image);
    case TransformId::FlipH: return flip_horizontal(image);
    case TransformId::Scale: return scale(image, g.scale_factor);
    case TransformId::Translate: return translate(image, g.translate_dx, g.translate_dy, g.fill_value);
    case TransformId::Shear: return shear_horizontal(image, g.shear_k, g.fill_value);
    case TransformId::Brightness: return adjust_brightness(image, p.brightness_delta);
    case TransformId::Contrast: return adjust_contrast(image, p.contrast_factor);
    case TransformId::Noise: return add_gaussian_noise(image, stream, p.noise_mean, p.noise_sigma);
    case TransformId::HistEq: return equalize_histogram_luma(image);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown transform");
}

ImageBuffer apply_augmentation(TransformId op, const ImageBuffer& image, const AugmentParams& params,
                               RngStream& stream) {
  ImageBuffer out = apply_transform(op, image, params, stream);
  if (op == TransformId::Scale && out.width() >= image.width() && out.height() >= image.height()) {
    return crop_center(out, image.width(), image.height());
  }
  return out;
}

AugmentationPlan plan_balancing(const DatasetManifest& manifest, std::size_t target,
                                const std::vector<TransformId>& roster, std::uint64_t master_seed,
                                bool force) {
  if (manifest.task != Task::Classification) {
    throw Error(ErrorCode::InvalidArgument, "balancing applies to classification manifests only");
  }
  if (roster.empty()) throw Error(ErrorCode::EmptyRoster, "no transforms to assign");
  const auto counts = manifest.class_counts();
  std::size_t largest = 0;
  for (const auto& [label, n] : counts) largest = std::max(largest, n);
  if (target == 0 || (target < largest && !force)) {
    throw Error(ErrorCode::InvalidTarget, "target " + std::to_string(target) +
                                              " is below the largest class (" +
                                              std::to_string(largest) + ")");
  }

  AugmentationPlan plan;
  plan.master_seed = master_seed;
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < manifest.classified.size(); ++i) {
    const auto& item = manifest.classified[i];
    by_class[item.label].push_back(i);
    plan.originals.push_back({item.path, fs::path(item.label) / item.path.filename()});
  }

  std::uint64_t stream_index = 0;
  for (const auto& label : manifest.labels) {
    const auto& members = by_class[label];
    const std::size_t have = members.size();
    if (have >= target) continue;
    const std::size_t deficit = target - have;
    for (std::size_t j = 0; j < deficit; ++j) {
      const std::size_t i = j % have;
      const std::size_t q = j / have;
      const TransformId op = roster[(i + q) % roster.size()];
      const auto& item = manifest.classified[members[i]];
      PlanRecord rec;
      rec.source_item = members[i];
      rec.source = item.path;
      rec.label = label;
      rec.op = op;
      rec.occurrence = static_cast<int>(q);
      rec.stream_index = stream_index++;
      rec.output = fs::path(label) / (item.path.stem().string() + "__" + std::string(to_string(op)) +
                                      std::to_string(q) + ".png");
      plan.records.push_back(std::move(rec));
    }
  }
  return plan;
}

std::optional<Provenance> parse_augmented_name(std::string_view filename) {
  constexpr std::string_view kExt = ".png";
  if (filename.size() <= kExt.size() || filename.substr(filename.size() - kExt.size()) != kExt) {
    return std::nullopt;
  }
  const std::string_view body = filename.substr(0, filename.size() - kExt.size());
  const std::size_t sep = body.rfind("__");
  if (sep == std::string_view::npos || sep == 0) return std::nullopt;
  const std::string_view tail = body.substr(sep + 2);
  // Op names may end in digits (rotate90), so match the longest known name.
  std::optional<TransformId> op;
  std::size_t name_len = 0;
  for (const TransformId candidate : default_roster()) {
    const std::string_view name = to_string(candidate);
    if (tail.substr(0, name.size()) == name && name.size() > name_len) {
      op = candidate;
      name_len = name.size();
    }
  }
  if (!op || name_len == tail.size()) return std::nullopt;
  int occurrence = 0;
  const auto num = tail.substr(name_len);
  const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), occurrence);
  if (ec != std::errc{} || ptr != num.data() + num.size()) return std::nullopt;
  return Provenance{std::string(body.substr(0, sep)), *op, occurrence};
}

namespace {

void copy_bytes(const fs::path& from, const fs::path& to) {
  fs::create_directories(to.parent_path());
  fs::copy_file(from, to, fs::copy_options::overwrite_existing);
}

fs::path canonical_or_self(const fs::path& p) {
  std::error_code ec;
  auto c = fs::weakly_canonical(p, ec);
  return ec ? p : c;
}

void tally(ExecutionReport& report) {
  report.succeeded = 0;
  report.failed = 0;
  for (const auto& o : report.outcomes) (o.ok ? report.succeeded : report.failed)++;
}

}  // namespace

ExecutionReport execute_plan(const AugmentationPlan& plan, const fs::path& out_root,
                             const AugmentParams& params, std::uint64_t master_seed, int workers) {
  ExecutionReport report;
  const std::size_t n_copy = plan.originals.size();
  const std::size_t total = n_copy + plan.records.size();
  report.outcomes.resize(total);
  if (total == 0) return report;

  std::set<fs::path> sources;
  for (const auto& c : plan.originals) sources.insert(canonical_or_self(c.source));
  for (const auto& r : plan.records) sources.insert(canonical_or_self(r.source));

  // Directories are created up front so workers never race on them.
  std::set<fs::path> dirs;
  for (const auto& c : plan.originals) dirs.insert((out_root / c.output).parent_path());
  for (const auto& r : plan.records) dirs.insert((out_root / r.output).parent_path());
  for (const auto& d : dirs) {
    std::error_code ec;
    fs::create_directories(d, ec);
  }

  const auto n = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_workers(workers))
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    RecordOutcome& outcome = report.outcomes[t];
    try {
      const auto idx = static_cast<std::size_t>(t);
      const fs::path source = idx < n_copy ? plan.originals[idx].source : plan.records[idx - n_copy].source;
      outcome.output = out_root / (idx < n_copy ? plan.originals[idx].output : plan.records[idx - n_copy].output);
      if (sources.contains(canonical_or_self(outcome.output))) {
        throw Error(ErrorCode::Io, "refusing to overwrite source " + outcome.output.string());
      }
      if (idx < n_copy) {
        copy_bytes(source, outcome.output);
      } else {
        const PlanRecord& rec = plan.records[idx - n_copy];
        const ImageBuffer image = io::read_png(rec.source);
        RngStream stream = derive_stream(master_seed, rec.stream_index);
        io::write_png(outcome.output, apply_augmentation(rec.op, image, params, stream));
      }
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.error = e.what();
    }
  }
  tally(report);
  return report;
}

std::vector<SamplePair> load_pairs(const std::vector<SegmentationItem>& items, int workers) {
  std::vector<std::optional<SamplePair>> slots(items.size());
  std::vector<std::string> errors(items.size());
  const auto n = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for schedule(dynamic) num_threads(resolve_workers(workers))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      slots[i].emplace(io::read_png(items[i].image), io::read_mask(items[i].mask));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  std::vector<SamplePair> pairs;
  pairs.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!slots[i]) throw Error(ErrorCode::Decode, items[i].image.string() + ": " + errors[i]);
    pairs.push_back(std::move(*slots[i]));
  }
  return pairs;
}

std::string mixup_filename(std::size_t k, std::size_t i, std::size_t j) {
  std::string index = std::to_string(k);
  if (index.size() < 4) index.insert(0, 4 - index.size(), '0');
  return "mix_" + index + "_" + std::to_string(i) + "_" + std::to_string(j) + ".png";
}

ExecutionReport write_mixup_results(const std::vector<MixupResult>& results, const fs::path& images_dir,
                                    const fs::path& masks_dir, int workers) {
  ExecutionReport report;
  report.outcomes.resize(results.size());
  fs::create_directories(images_dir);
  fs::create_directories(masks_dir);
  const auto n = static_cast<std::ptrdiff_t>(results.size());
#pragma omp parallel for schedule(dynamic) num_threads(resolve_workers(workers))
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto& r = results[k];
    const std::string name = mixup_filename(static_cast<std::size_t>(k), r.source_ids.first, r.source_ids.second);
    RecordOutcome& outcome = report.outcomes[k];
    outcome.output = images_dir / name;
    try {
      io::write_png(images_dir / name, r.image);
      io::write_mask(masks_dir / name, r.mask);
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.error = e.what();
    }
  }
  tally(report);
  return report;
}

ExecutionReport expand_segmentation_set(const DatasetManifest& manifest, const fs::path& out_root,
                                        const ExpandOptions& options) {
  if (manifest.task != Task::Segmentation) {
    throw Error(ErrorCode::InvalidArgument, "expansion applies to segmentation manifests only");
  }
  if (options.count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  const auto train = manifest.split_items(Split::Train);
  if (train.size() < 2) {
    throw Error(ErrorCode::DatasetTooSmall, "train split has " + std::to_string(train.size()) +
                                                " pairs, need at least 2");
  }
  if (canonical_or_self(out_root) == canonical_or_self(manifest.root)) {
    throw Error(ErrorCode::InvalidArgument, "output root must differ from the dataset root");
  }

  const std::vector<SamplePair> pairs = load_pairs(train, options.workers);
  const auto mixed = generate_mixup_set(pairs, options.count, options.alpha, options.mode, options.master_seed);

  ExecutionReport report;
  std::vector<std::pair<fs::path, fs::path>> copies;
  for (const auto& item : manifest.segmented) {
    const fs::path split_dir = out_root / std::string(to_string(item.split));
    copies.emplace_back(item.image, split_dir / "images" / item.image.filename());
    copies.emplace_back(item.mask, split_dir / "masks" / item.mask.filename());
  }
  for (const auto& [from, to] : copies) {
    RecordOutcome outcome{to, true, {}};
    try {
      copy_bytes(from, to);
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.error = e.what();
    }
    report.outcomes.push_back(std::move(outcome));
  }
  // An empty test split still gets its directories so the layout stays scannable.
  for (const char* split : {"train", "test"}) {
    fs::create_directories(out_root / split / "images");
    fs::create_directories(out_root / split / "masks");
  }

  ExecutionReport written = write_mixup_results(mixed, out_root / "train" / "images",
                                                out_root / "train" / "masks", options.workers);
  for (auto& o : written.outcomes) report.outcomes.push_back(std::move(o));
  tally(report);
  return report;
}

}  // namespace medaug
