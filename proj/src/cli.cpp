#include "medaug/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "medaug/dataset.hpp"
#include "medaug/metrics.hpp"
#include "medaug/png_io.hpp"

namespace medaug::cli {

namespace {

enum class Verbosity { Quiet, Normal, Verbose };

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  bool quiet = false;
  bool verbose = false;

  Verbosity verbosity() const {
    if (quiet) return Verbosity::Quiet;
    return verbose ? Verbosity::Verbose : Verbosity::Normal;
  }
};

class Log {
public:
  Log(std::ostream& sink, Verbosity level) : sink_(sink), level_(level) {}

  void info(const std::string& msg) const {
    if (level_ != Verbosity::Quiet) sink_ << "[medaug] " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (level_ == Verbosity::Verbose) sink_ << "[medaug] " << msg << '\n';
  }
  void error(const std::string& msg) const { sink_ << "[medaug] error: " << msg << '\n'; }

private:
  std::ostream& sink_;
  Verbosity level_;
};

int status_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Io:
    case ErrorCode::Decode:
      return kPartialFailure;
    default:
      return kUsageError;
  }
}

int finish(const ExecutionReport& report, const Log& log, const std::string& what) {
  std::size_t n = 0;
  for (const auto& o : report.outcomes) {
    ++n;
    if (!o.ok) {
      log.error(o.output.string() + ": " + o.error);
    } else {
      log.debug("[" + std::to_string(n) + "/" + std::to_string(report.outcomes.size()) + "] " +
                o.output.string());
    }
  }
  log.info(what + ": " + std::to_string(report.succeeded) + " written, " +
           std::to_string(report.failed) + " failed");
  return report.ok() ? kSuccess : kPartialFailure;
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
}

// ---- apply ---------------------------------------------------------------

struct ApplyArgs {
  std::string op;
  std::string in;
  std::string out;
  std::string mask_in;
  std::string mask_out;
  std::optional<double> factor;
  int dx = GeometricParams{}.translate_dx;
  int dy = GeometricParams{}.translate_dy;
  double k = GeometricParams{}.shear_k;
  int fill = 0;
  int delta = PhotometricParams{}.brightness_delta;
  double sigma = PhotometricParams{}.noise_sigma;
  double mean = PhotometricParams{}.noise_mean;
};

BinaryMask transform_mask(TransformId op, const BinaryMask& mask, const AugmentParams& p) {
  const auto& g = p.geometric;
  switch (op) {
    case TransformId::Rotate90: return rotate90_cw(mask);
    case TransformId::FlipH: return flip_horizontal(mask);
    case TransformId::Scale: return scale_mask(mask, g.scale_factor);
    case TransformId::Translate: return translate(mask, g.translate_dx, g.translate_dy);
    case TransformId::Shear: return shear_horizontal(mask, g.shear_k);
    default: return mask;  // photometric ops never touch labels
  }
}

int run_apply(const ApplyArgs& a, const GlobalOptions& g, const Log& log) {
  const auto op = parse_transform(a.op);
  if (!op) throw Error(ErrorCode::InvalidArgument, "unknown op '" + a.op + "'");
  if (a.mask_in.empty() != a.mask_out.empty()) {
    throw Error(ErrorCode::InvalidArgument, "--mask-in and --mask-out must be given together");
  }
  AugmentParams params;
  params.geometric.translate_dx = a.dx;
  params.geometric.translate_dy = a.dy;
  params.geometric.shear_k = a.k;
  params.geometric.fill_value = static_cast<std::uint8_t>(a.fill);
  if (a.factor) {
    params.geometric.scale_factor = *a.factor;
    params.photometric.contrast_factor = *a.factor;
  }
  params.photometric.brightness_delta = a.delta;
  params.photometric.noise_sigma = a.sigma;
  params.photometric.noise_mean = a.mean;

  if (*op == TransformId::Noise) log.info("seed=" + std::to_string(g.seed));
  const ImageBuffer image = io::read_png(a.in);
  RngStream stream = derive_stream(g.seed, 0);
  io::write_png(a.out, apply_transform(*op, image, params, stream));
  if (!a.mask_in.empty()) {
    io::write_mask(a.mask_out, transform_mask(*op, io::read_mask(a.mask_in), params));
  }
  log.debug("wrote " + a.out);
  return kSuccess;
}

// ---- balance ---------------------------------------------------------------

struct BalanceArgs {
  std::string input;
  std::string out;
  std::size_t target = 240;
  std::string ops;
  bool force = false;
};

int run_balance(const BalanceArgs& a, const GlobalOptions& g, const Log& log) {
  const auto roster = a.ops.empty() ? default_roster() : parse_roster(a.ops);
  const DatasetManifest manifest = scan_dataset(a.input, Task::Classification);
  log.info("seed=" + std::to_string(g.seed) + " workers=" + std::to_string(g.workers));
  for (const auto& [label, n] : manifest.class_counts()) {
    log.info("class " + label + ": " + std::to_string(n) + " -> " + std::to_string(std::max(n, a.target)));
  }
  const AugmentationPlan plan = plan_balancing(manifest, a.target, roster, g.seed, a.force);
  const ExecutionReport report = execute_plan(plan, a.out, AugmentParams{}, g.seed, g.workers);
  return finish(report, log, "balance");
}

// ---- expand-seg / mixup ----------------------------------------------------

struct MixArgs {
  std::string root;
  std::string images;
  std::string masks;
  std::string out;
  std::size_t count = 100;
  double alpha = 0.4;
  std::string mode = "global";
};

int run_expand(const MixArgs& a, const GlobalOptions& g, const Log& log) {
  ExpandOptions opts;
  opts.count = a.count;
  opts.alpha = a.alpha;
  opts.mode = parse_mixup_mode(a.mode);
  opts.master_seed = g.seed;
  opts.workers = g.workers;
  const DatasetManifest manifest = scan_dataset(a.root, Task::Segmentation);
  log.info("seed=" + std::to_string(g.seed) + " alpha=" + format_fixed(a.alpha, 3) + " mode=" + a.mode);
  return finish(expand_segmentation_set(manifest, a.out, opts), log, "expand-seg");
}

int run_mixup(const MixArgs& a, const GlobalOptions& g, const Log& log) {
  const MixupMode mode = parse_mixup_mode(a.mode);
  if (!fs::is_directory(a.images) || !fs::is_directory(a.masks)) {
    throw Error(ErrorCode::MissingDirectory, "--images and --masks must be directories");
  }
  std::vector<SegmentationItem> items;
  std::set<std::string> mask_names;
  for (const auto& e : fs::directory_iterator(a.masks)) {
    if (e.is_regular_file()) mask_names.insert(e.path().filename().string());
  }
  std::vector<fs::path> images;
  for (const auto& e : fs::directory_iterator(a.images)) {
    if (e.is_regular_file() && e.path().extension() == ".png") images.push_back(e.path());
  }
  std::sort(images.begin(), images.end(),
            [](const fs::path& x, const fs::path& y) { return x.generic_string() < y.generic_string(); });
  for (const auto& img : images) {
    const std::string name = img.filename().string();
    if (!mask_names.contains(name)) throw Error(ErrorCode::UnpairedMask, "no mask for " + img.string());
    items.push_back({img, fs::path(a.masks) / name, Split::Train});
  }
  log.info("seed=" + std::to_string(g.seed) + " alpha=" + format_fixed(a.alpha, 3) + " mode=" + a.mode);
  const auto pairs = load_pairs(items, g.workers);
  const auto results = generate_mixup_set(pairs, a.count, a.alpha, mode, g.seed);
  const fs::path out(a.out);
  return finish(write_mixup_results(results, out / "images", out / "masks", g.workers), log, "mixup");
}

// ---- dice --------------------------------------------------------------------

struct DiceArgs {
  std::string pred;
  std::string truth;
  int threshold = 128;
  std::string json_path;
};

int run_dice(const DiceArgs& a, std::ostream& out, const Log& log) {
  for (const auto& d : {a.pred, a.truth}) {
    if (!fs::is_directory(d)) throw Error(ErrorCode::MissingDirectory, d + " is not a directory");
  }
  std::map<std::string, fs::path> preds;
  for (const auto& e : fs::directory_iterator(a.pred)) {
    if (e.is_regular_file() && e.path().extension() == ".png") preds[e.path().filename().string()] = e.path();
  }
  std::vector<EvaluationPair> pairs;
  std::set<std::string> matched;
  bool unmatched = false;
  std::map<std::string, fs::path> truths;
  for (const auto& e : fs::directory_iterator(a.truth)) {
    if (e.is_regular_file() && e.path().extension() == ".png") truths[e.path().filename().string()] = e.path();
  }
  for (const auto& [name, path] : truths) {
    const auto it = preds.find(name);
    if (it == preds.end()) {
      log.error("no prediction for " + name);
      unmatched = true;
      continue;
    }
    matched.insert(name);
    pairs.push_back({name,
                     binarize_prediction(io::read_png(it->second), static_cast<std::uint8_t>(a.threshold)),
                     io::read_mask(path)});
  }
  for (const auto& [name, path] : preds) {
    if (!matched.contains(name)) {
      log.error("no ground truth for " + name);
      unmatched = true;
    }
  }
  const DiceReport report = mean_dice(pairs);
  nlohmann::json doc;
  doc["threshold"] = a.threshold;
  doc["items"] = nlohmann::json::array();
  for (const auto& item : report.per_item) {
    out << item.id << " dice=" << format_fixed(item.dice, 6) << '\n';
    doc["items"].push_back({{"id", item.id}, {"dice", item.dice}});
  }
  out << "mean_dice=" << format_fixed(report.mean_dice, 6) << '\n';
  doc["mean_dice"] = report.mean_dice;
  if (!a.json_path.empty()) write_text(a.json_path, doc.dump(2) + "\n");
  return unmatched ? kPartialFailure : kSuccess;
}

// ---- stats -------------------------------------------------------------------

struct StatsArgs {
  std::string input;
  std::string task = "classification";
  std::string json_path;
  std::string manifest_path;
};

int run_stats(const StatsArgs& a, std::ostream& out, const Log& log) {
  const DatasetManifest m = scan_dataset(a.input, parse_task(a.task));
  nlohmann::json doc;
  doc["task"] = a.task;
  std::vector<fs::path> images;
  std::map<std::string, std::size_t> counts;
  if (m.task == Task::Classification) {
    counts = m.class_counts();
    for (const auto& i : m.classified) images.push_back(i.path);
  } else {
    counts = {{"train", 0}, {"test", 0}};
    for (const auto& i : m.segmented) {
      ++counts[std::string(to_string(i.split))];
      images.push_back(i.image);
    }
  }
  const char* group = m.task == Task::Classification ? "class" : "split";
  for (const auto& [name, n] : counts) {
    out << group << ' ' << name << ": " << n << '\n';
    doc[m.task == Task::Classification ? "classes" : "splits"][name] = n;
  }
  std::map<std::string, std::size_t> dims;
  for (const auto& path : images) {
    try {
      const ImageBuffer img = io::read_png(path);
      ++dims[std::to_string(img.width()) + "x" + std::to_string(img.height()) + "x" +
             std::to_string(img.channels())];
    } catch (const Error& e) {
      log.error(e.what());
      ++dims["unreadable"];
    }
  }
  for (const auto& [key, n] : dims) {
    out << "dims " << key << ": " << n << '\n';
    doc["dimensions"][key] = n;
  }
  out << "total: " << images.size() << '\n';
  doc["total"] = images.size();
  if (!a.json_path.empty()) write_text(a.json_path, doc.dump(2) + "\n");
  if (!a.manifest_path.empty()) write_text(a.manifest_path, manifest_to_json(m) + "\n");
  return dims.contains("unreadable") ? kPartialFailure : kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic image/mask augmentation for medical imaging datasets", "medaug"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  g.workers = std::max(1, omp_get_num_procs());
  app.add_option("--seed", g.seed, "Master seed for every randomized step")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  auto* quiet = app.add_flag("--quiet", g.quiet, "Only report errors");
  app.add_flag("--verbose", g.verbose, "Per-record progress")->excludes(quiet);

  ApplyArgs apply_args;
  auto* apply = app.add_subcommand("apply", "Apply one transform to a PNG (and optionally its mask)");
  apply->add_option("--op", apply_args.op, "rotate90|scale|translate|shear|fliph|brightness|contrast|noise|histeq")
      ->required();
  apply->add_option("--in", apply_args.in, "Input PNG")->required();
  apply->add_option("--out", apply_args.out, "Output PNG")->required();
  apply->add_option("--mask-in", apply_args.mask_in, "Mask to transform alongside the image");
  apply->add_option("--mask-out", apply_args.mask_out, "Where to write the transformed mask");
  apply->add_option("--factor", apply_args.factor, "Scale factor (scale) or contrast factor (contrast)");
  apply->add_option("--dx", apply_args.dx)->capture_default_str();
  apply->add_option("--dy", apply_args.dy)->capture_default_str();
  apply->add_option("--k", apply_args.k, "Horizontal shear coefficient")->capture_default_str();
  apply->add_option("--fill", apply_args.fill)->check(CLI::Range(0, 255))->capture_default_str();
  apply->add_option("--delta", apply_args.delta, "Brightness delta")->capture_default_str();
  apply->add_option("--sigma", apply_args.sigma, "Noise standard deviation")->capture_default_str();
  apply->add_option("--mean", apply_args.mean, "Noise mean")->capture_default_str();

  BalanceArgs balance_args;
  auto* balance = app.add_subcommand("balance", "Augment minority classes up to a per-class target");
  balance->add_option("--input", balance_args.input, "Class-per-directory dataset root")->required();
  balance->add_option("--out", balance_args.out, "Output root")->required();
  balance->add_option("--target", balance_args.target, "Files per class")->capture_default_str();
  balance->add_option("--ops", balance_args.ops, "Comma-separated roster (default: all nine ops)");
  balance->add_flag("--force", balance_args.force, "Allow a target below the largest class");

  MixArgs expand_args;
  auto* expand = app.add_subcommand("expand-seg", "Add mixup pairs to a segmentation train split");
  expand->add_option("--root", expand_args.root, "Dataset root with train/ and test/")->required();
  expand->add_option("--out", expand_args.out, "Output root")->required();
  expand->add_option("--count", expand_args.count)->check(CLI::PositiveNumber)->capture_default_str();
  expand->add_option("--alpha", expand_args.alpha)->capture_default_str();
  expand->add_option("--mode", expand_args.mode)->check(CLI::IsMember({"global", "composite"}))->capture_default_str();

  MixArgs mixup_args;
  auto* mix = app.add_subcommand("mixup", "Generate mixup pairs from an image and a mask directory");
  mix->add_option("--images", mixup_args.images)->required();
  mix->add_option("--masks", mixup_args.masks)->required();
  mix->add_option("--out", mixup_args.out)->required();
  mix->add_option("--count", mixup_args.count)->check(CLI::PositiveNumber)->capture_default_str();
  mix->add_option("--alpha", mixup_args.alpha)->capture_default_str();
  mix->add_option("--mode", mixup_args.mode)->check(CLI::IsMember({"global", "composite"}))->capture_default_str();

  DiceArgs dice_args;
  auto* dice_cmd = app.add_subcommand("dice", "Score predicted masks against ground truth");
  dice_cmd->add_option("--pred", dice_args.pred)->required();
  dice_cmd->add_option("--truth", dice_args.truth)->required();
  dice_cmd->add_option("--threshold", dice_args.threshold)->check(CLI::Range(0, 255))->capture_default_str();
  dice_cmd->add_option("--json", dice_args.json_path, "Write a JSON report");

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Per-class/per-split counts and image dimensions");
  stats->add_option("--input", stats_args.input)->required();
  stats->add_option("--task", stats_args.task)
      ->check(CLI::IsMember({"classification", "segmentation"}))
      ->capture_default_str();
  stats->add_option("--json", stats_args.json_path, "Write a JSON summary");
  stats->add_option("--manifest", stats_args.manifest_path, "Write the scanned manifest as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "medaug: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  const Log log(err, g.verbosity());
  omp_set_num_threads(g.workers);
  try {
    if (*apply) return run_apply(apply_args, g, log);
    if (*balance) return run_balance(balance_args, g, log);
    if (*expand) return run_expand(expand_args, g, log);
    if (*mix) return run_mixup(mixup_args, g, log);
    if (*dice_cmd) return run_dice(dice_args, out, log);
    if (*stats) return run_stats(stats_args, out, log);
  } catch (const Error& e) {
    log.error(e.what());
    return status_for(e);
  } catch (const std::exception& e) {
    log.error(e.what());
    return kPartialFailure;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace medaug::cli
