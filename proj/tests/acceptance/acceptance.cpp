// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "medaug/dataset.hpp"
#include "medaug/geometric.hpp"
#include "medaug/metrics.hpp"
#include "medaug/mixup.hpp"
#include "medaug/photometric.hpp"
#include "medaug/rng.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace medaug;
using fixture::run_cli;
using fixture::TempDir;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the first few failure reasons for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

bool cli_ok(Check& chk, const std::vector<std::string>& args) {
  const auto r = run_cli(args);
  chk.expect(r.status == 0, args.front() + " exited " + std::to_string(r.status) + ": " + r.err);
  return r.status == 0;
}

std::size_t count_png(const fs::path& dir) {
  if (!fs::is_directory(dir)) return 0;
  return static_cast<std::size_t>(std::count_if(fs::directory_iterator(dir), fs::directory_iterator{},
                                                [](const auto& e) {
                                                  return e.is_regular_file() && e.path().extension() == ".png";
                                                }));
}

// 1. balance counts
Check count_fidelity_classification() {
  Check chk;
  TempDir tmp("acc_balance");
  fixture::write_classification_tree(tmp / "in", {{"benign", 30}, {"malignant", 240}}, 64, 64, 11);
  const auto t0 = Clock::now();
  if (!cli_ok(chk, {"balance", "--input", (tmp / "in").string(), "--out", (tmp / "out").string(),
                    "--target", "240", "--quiet"}))
    return chk;
  const double elapsed = seconds_since(t0);
  chk.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");

  chk.expect(count_png(tmp / "out" / "benign") == 240, "benign count " + std::to_string(count_png(tmp / "out" / "benign")));
  chk.expect(count_png(tmp / "out" / "malignant") == 240,
             "malignant count " + std::to_string(count_png(tmp / "out" / "malignant")));

  std::map<std::string, int> uses;
  std::size_t augmented = 0;
  for (const auto& e : fs::directory_iterator(tmp / "out" / "benign")) {
    const auto p = parse_augmented_name(e.path().filename().string());
    if (!p) continue;
    ++augmented;
    ++uses[p->source_stem];
  }
  chk.expect(augmented == 210, "augmented benign " + std::to_string(augmented));
  chk.expect(uses.size() == 30, "distinct benign sources " + std::to_string(uses.size()));
  for (const auto& [stem, n] : uses) chk.expect(n == 7, stem + " used " + std::to_string(n) + " times");
  return chk;
}

// 2. expand-seg counts
Check count_fidelity_segmentation() {
  Check chk;
  TempDir tmp("acc_expand");
  fixture::write_segmentation_tree(tmp / "in", 80, 20, 64, 64, 12);
  const auto before = fixture::tree_digest(tmp / "in" / "test");
  const auto t0 = Clock::now();
  if (!cli_ok(chk, {"expand-seg", "--root", (tmp / "in").string(), "--out", (tmp / "out").string(), "--count",
                    "100", "--quiet"}))
    return chk;
  const double elapsed = seconds_since(t0);
  chk.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");

  const auto train_images = count_png(tmp / "out" / "train" / "images");
  const auto train_masks = count_png(tmp / "out" / "train" / "masks");
  chk.expect(train_images == 180, "train images " + std::to_string(train_images));
  chk.expect(train_masks == 180, "train masks " + std::to_string(train_masks));
  chk.expect(fixture::tree_digest(tmp / "in" / "test") == before, "input test split modified");
  chk.expect(fixture::tree_digest(tmp / "out" / "test") == before, "output test split differs from input");
  return chk;
}

// 3. transform algebra
Check transform_algebra() {
  Check chk;
  std::mt19937_64 gen(13);
  std::uniform_int_distribution<int> side(1, 40);
  std::uniform_int_distribution<int> chans(0, 1);
  for (int n = 0; n < 120; ++n) {
    const int w = side(gen), h = side(gen);
    const auto img = fixture::random_image(gen, w, h, chans(gen) ? 3 : 1);
    const std::string tag = " on " + std::to_string(w) + "x" + std::to_string(h);

    chk.expect(flip_horizontal(flip_horizontal(img)) == img, "flip involution" + tag);
    chk.expect(rotate90_cw(rotate90_cw(rotate90_cw(rotate90_cw(img)))) == img, "rotate90^4" + tag);
    chk.expect(scale(img, 1.0) == img, "scale factor 1" + tag);
    chk.expect(shear_horizontal(img, 0.0, 0) == img, "shear k=0" + tag);
    chk.expect(adjust_brightness(img, 0) == img, "brightness delta 0" + tag);
    chk.expect(adjust_contrast(img, 1.0) == img, "contrast factor 1" + tag);
    RngStream stream = derive_stream(kDefaultSeed, static_cast<std::uint64_t>(n));
    chk.expect(add_gaussian_noise(img, stream, 0.0, 0.0) == img, "noise sigma 0" + tag);
    chk.expect(translate(img, 0, 0) == img, "translate 0,0" + tag);

    // Translate and back: the window that never left the frame survives.
    std::uniform_int_distribution<int> ddx(-w / 2, w / 2), ddy(-h / 2, h / 2);
    const int dx = ddx(gen), dy = ddy(gen);
    const auto round_trip = translate(translate(img, dx, dy, 7), -dx, -dy, 7);
    bool interior = true;
    for (int r = std::max(0, -dy); r < std::min(h, h - dy); ++r) {
      for (int c = std::max(0, -dx); c < std::min(w, w - dx); ++c) {
        for (int ch = 0; ch < img.channels(); ++ch) interior &= round_trip.at(r, c, ch) == img.at(r, c, ch);
      }
    }
    chk.expect(interior, "translate and back" + tag);
  }
  return chk;
}

// 4. scale / shear vs brute force
Check resampling_oracle() {
  Check chk;
  std::mt19937_64 gen(14);
  const std::vector<double> factors{0.5, 0.75, 1.2, 1.5, 2.0, 3.0};
  const std::vector<double> shears{-0.6, -0.2, 0.1, 0.2, 0.5, 1.3};
  for (int w = 1; w <= 8; ++w) {
    for (int h = 1; h <= 8; ++h) {
      for (const int ch : {1, 3}) {
        const auto img = fixture::random_image(gen, w, h, ch);
        const std::string tag = " on " + std::to_string(w) + "x" + std::to_string(h) + "x" + std::to_string(ch);
        for (const double f : factors) {
          chk.expect(scale(img, f) == oracle::scale(img, f), "scale " + std::to_string(f) + tag);
        }
        for (const double k : shears) {
          chk.expect(shear_horizontal(img, k, 9) == oracle::shear(img, k, 9), "shear " + std::to_string(k) + tag);
        }
      }
    }
  }
  return chk;
}

// 5. sampler moments
Check sampler_statistics() {
  Check chk;
  const auto t0 = Clock::now();
  constexpr int kDraws = 100000;

  RngStream beta_stream = derive_stream(kDefaultSeed, 0);
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = sample_beta(beta_stream, 0.4);
    sum += x;
    sum_sq += x * x;
  }
  const double beta_mean = sum / kDraws;
  const double beta_var = sum_sq / kDraws - beta_mean * beta_mean;
  chk.expect(std::abs(beta_mean - 0.5) <= 0.02, "beta mean " + std::to_string(beta_mean));
  chk.expect(std::abs(beta_var - 0.1389) <= 0.01, "beta variance " + std::to_string(beta_var));

  RngStream gauss_stream = derive_stream(kDefaultSeed, 1);
  sum = sum_sq = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = sample_gaussian(gauss_stream, 0.0, 10.0);
    sum += x;
    sum_sq += x * x;
  }
  const double g_mean = sum / kDraws;
  const double g_std = std::sqrt(sum_sq / kDraws - g_mean * g_mean);
  chk.expect(std::abs(g_mean) <= 0.2, "gaussian mean " + std::to_string(g_mean));
  chk.expect(std::abs(g_std - 10.0) <= 0.2, "gaussian std " + std::to_string(g_std));

  const double elapsed = seconds_since(t0);
  chk.expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
  return chk;
}

// 6. mixup contract
Check mixup_contract() {
  Check chk;
  std::mt19937_64 gen(16);
  std::uniform_real_distribution<double> lam(0.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    const int w = n < 100 ? 4 : 1 + n % 23, h = n < 100 ? 4 : 1 + n % 17;
    const int ch = n % 2 ? 3 : 1;
    const SamplePair a(fixture::random_image(gen, w, h, ch), fixture::random_mask(gen, w, h, 0.4));
    const SamplePair b(fixture::random_image(gen, w, h, ch), fixture::random_mask(gen, w, h, 0.4));
    const double l = lam(gen);
    const std::string tag = " case " + std::to_string(n);

    const auto g1 = mixup_global(a, b, 1.0);
    chk.expect(g1.image == a.image && g1.mask == a.mask, "global lambda=1" + tag);
    const auto g0 = mixup_global(a, b, 0.0);
    chk.expect(g0.image == b.image && g0.mask == b.mask, "global lambda=0" + tag);
    const auto c0 = mixup_composite(a, b, 0.0);
    chk.expect(c0.image == b.image && c0.mask == b.mask, "composite lambda=0" + tag);

    const auto ab = mixup_global(a, b, l);
    const auto ba = mixup_global(b, a, 1.0 - l);
    chk.expect(ab.image == ba.image && ab.mask == ba.mask && ab.soft_mask == ba.soft_mask, "global symmetry" + tag);

    for (const auto mode : {MixupMode::Global, MixupMode::Composite}) {
      const auto m = mixup(a, b, l, mode);
      bool bounded = true;
      for (std::size_t i = 0; i < m.image.size(); ++i) {
        const int va = a.image.samples()[i], vb = b.image.samples()[i], v = m.image.samples()[i];
        bounded &= v >= std::min(va, vb) - 1 && v <= std::max(va, vb) + 1;
      }
      chk.expect(bounded, std::string(to_string(mode)) + " convex bound" + tag);

      const auto o = oracle::mixup(a, b, l, mode == MixupMode::Composite);
      const bool same_image = std::equal(o.image.begin(), o.image.end(), m.image.samples().begin());
      const bool same_mask = std::equal(o.mask.begin(), o.mask.end(), m.mask.samples().begin());
      chk.expect(same_image && same_mask && o.soft == m.soft_mask, std::string(to_string(mode)) + " oracle" + tag);
    }
  }
  return chk;
}

// 7. dice
Check dice_oracle() {
  Check chk;
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    const auto a = fixture::random_mask(gen, 16, 16, p(gen));
    const auto b = fixture::random_mask(gen, 16, 16, p(gen));
    const double got = dice(a, b), want = oracle::dice(a, b);
    chk.expect(std::abs(got - want) <= 1e-12, "pair " + std::to_string(n) + ": " + std::to_string(got) +
                                                  " vs " + std::to_string(want));
    chk.expect(dice(a, a) == 1.0, "dice(a,a) pair " + std::to_string(n));
  }
  const BinaryMask empty(16, 16);
  chk.expect(dice(empty, empty) == 1.0, "empty-empty");

  BinaryMask a(4, 4), b(4, 4);
  for (const int i : {0, 1, 2, 3}) a.set(static_cast<std::size_t>(i), true);
  for (const int i : {2, 3, 4, 5}) b.set(static_cast<std::size_t>(i), true);
  chk.expect(dice(a, b) == 0.5, "hand case " + std::to_string(dice(a, b)));
  return chk;
}

// 8. determinism across runs and worker counts
Check determinism() {
  Check chk;
  TempDir tmp("acc_determinism");
  fixture::write_classification_tree(tmp / "cls", {{"benign", 6}, {"malignant", 20}}, 24, 24, 18);
  fixture::write_segmentation_tree(tmp / "seg", 12, 4, 24, 24, 19);
  const fs::path images = tmp / "seg" / "train" / "images";
  const fs::path masks = tmp / "seg" / "train" / "masks";
  const fs::path single = tmp / "seg" / "train" / "images" / fixture::numbered("train_", 0);

  using Args = std::function<std::vector<std::string>(const fs::path&)>;
  const std::vector<std::pair<std::string, Args>> commands{
      {"balance",
       [&](const fs::path& out) {
         return std::vector<std::string>{"balance", "--input", (tmp / "cls").string(), "--out", out.string(),
                                         "--target", "20"};
       }},
      {"expand-seg",
       [&](const fs::path& out) {
         return std::vector<std::string>{"expand-seg", "--root", (tmp / "seg").string(), "--out", out.string(),
                                         "--count", "25", "--mode", "composite"};
       }},
      {"mixup",
       [&](const fs::path& out) {
         return std::vector<std::string>{"mixup",   "--images", images.string(), "--masks", masks.string(),
                                         "--out",   out.string(), "--count", "25"};
       }},
      {"apply noise",
       [&](const fs::path& out) {
         return std::vector<std::string>{"apply", "--op", "noise", "--in", single.string(), "--out",
                                         (out / "noisy.png").string()};
       }},
  };

  int run = 0;
  for (const auto& [name, args] : commands) {
    std::vector<std::map<std::string, std::uint64_t>> digests;
    for (const auto& flags : {std::vector<std::string>{"--seed", "7", "--workers", "1"},
                              std::vector<std::string>{"--seed", "7", "--workers", "1"},
                              std::vector<std::string>{"--seed", "7", "--workers", "8"}}) {
      const fs::path out = tmp / ("out" + std::to_string(run++));
      fs::create_directories(out);
      auto argv = args(out);
      argv.insert(argv.end(), flags.begin(), flags.end());
      argv.push_back("--quiet");
      if (!cli_ok(chk, argv)) return chk;
      digests.push_back(fixture::tree_digest(out));
    }
    chk.expect(!digests[0].empty(), name + " produced no files");
    chk.expect(digests[0] == digests[1], name + " differs between identical runs");
    chk.expect(digests[0] == digests[2], name + " differs between --workers 1 and 8");
  }
  return chk;
}

// 9. equalization LUT
Check equalization_properties() {
  Check chk;
  std::mt19937_64 gen(20);
  std::uniform_int_distribution<int> lo(0, 200), span(1, 55);
  for (int n = 0; n < 200; ++n) {
    const int a = lo(gen), b = a + span(gen);
    std::uniform_int_distribution<int> v(a, b);
    Histogram hist{};
    hist[a] += 1;
    hist[b] += 1;
    for (int i = 0; i < 300; ++i) hist[v(gen)] += 1;
    const auto lut = equalization_lut(hist);
    chk.expect(lut.has_value(), "lut missing for case " + std::to_string(n));
    if (!lut) continue;
    chk.expect(std::is_sorted(lut->begin(), lut->end()), "not monotone case " + std::to_string(n));
    chk.expect((*lut)[a] == 0, "occupied min not 0 case " + std::to_string(n));
    chk.expect((*lut)[b] == 255, "occupied max not 255 case " + std::to_string(n));
  }

  for (const std::uint8_t level : {0, 77, 255}) {
    const ImageBuffer flat(9, 5, 1, level);
    chk.expect(equalize_histogram_luma(flat) == flat, "constant gray passthrough " + std::to_string(level));
    const ImageBuffer flat_rgb(9, 5, 3, level);
    chk.expect(equalize_histogram_luma(flat_rgb) == flat_rgb, "constant rgb passthrough " + std::to_string(level));
  }

  const ImageBuffer worked(4, 1, 1, std::vector<std::uint8_t>{10, 10, 10, 200});
  const ImageBuffer expected(4, 1, 1, std::vector<std::uint8_t>{0, 0, 0, 255});
  chk.expect(equalize_histogram_luma(worked) == expected, "[10,10,10,200] worked case");
  return chk;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"count fidelity, classification", count_fidelity_classification},
      {"count fidelity, segmentation", count_fidelity_segmentation},
      {"transform algebra", transform_algebra},
      {"resampling oracle", resampling_oracle},
      {"sampler statistics", sampler_statistics},
      {"mixup contract", mixup_contract},
      {"dice oracle", dice_oracle},
      {"determinism", determinism},
      {"equalization lut", equalization_properties},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check chk;
    const auto t0 = Clock::now();
    try {
      chk = criteria[i].second();
    } catch (const std::exception& e) {
      chk.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] %zu. %s (%.2f s)\n", chk.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                seconds_since(t0));
    for (const auto& f : chk.failures) std::printf("       %s\n", f.c_str());
    failed += chk.ok() ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
