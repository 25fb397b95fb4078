#include <gtest/gtest.h>

#include <fstream>

#include <json.hpp>

#include "cli_runner.hpp"
#include "medaug/geometric.hpp"
#include "medaug/png_io.hpp"
#include "support.hpp"

using namespace medaug;
using fixture::run_cli;
using fixture::TempDir;
namespace fs = std::filesystem;

TEST(Cli, FlipTwiceRestoresFileBytes) {
  TempDir dir;
  std::mt19937_64 gen(1);
  io::write_png(dir / "a.png", fixture::random_image(gen, 23, 17, 3));
  EXPECT_EQ(run_cli({"apply", "--op", "fliph", "--in", (dir / "a.png").string(), "--out", (dir / "b.png").string()}).status, 0);
  EXPECT_EQ(run_cli({"apply", "--op", "fliph", "--in", (dir / "b.png").string(), "--out", (dir / "c.png").string()}).status, 0);
  EXPECT_EQ(io::read_file(dir / "a.png"), io::read_file(dir / "c.png"));
  EXPECT_NE(io::read_file(dir / "a.png"), io::read_file(dir / "b.png"));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({"frobnicate"}).status, 2);
  EXPECT_EQ(run_cli({}).status, 2);
  EXPECT_EQ(run_cli({"apply", "--op", "fliph"}).status, 2);
  EXPECT_EQ(run_cli({"--workers", "0", "stats", "--input", "."}).status, 2);
  EXPECT_EQ(run_cli({"dice", "--pred", "a", "--truth", "b", "--threshold", "300"}).status, 2);
  EXPECT_EQ(run_cli({"expand-seg", "--root", "x", "--out", "y", "--count", "0"}).status, 2);
  EXPECT_EQ(run_cli({"balance", "--input", "/definitely/not/here", "--out", "/tmp/x"}).status, 2);
  EXPECT_EQ(run_cli({"--quiet", "--verbose", "stats", "--input", "."}).status, 2);
  const auto unknown_op = run_cli({"apply", "--op", "blur", "--in", "a", "--out", "b"});
  EXPECT_EQ(unknown_op.status, 2);
  EXPECT_NE(unknown_op.err.find("blur"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("balance"), std::string::npos);
}

TEST(Cli, ApplyGeometricOpTransformsMaskToo) {
  TempDir dir;
  std::mt19937_64 gen(2);
  const ImageBuffer img = fixture::random_image(gen, 20, 10, 3);
  const BinaryMask mask = fixture::random_mask(gen, 20, 10);
  io::write_png(dir / "i.png", img);
  io::write_mask(dir / "m.png", mask);
  const auto r = run_cli({"apply", "--op", "scale", "--factor", "1.5", "--in", (dir / "i.png").string(), "--out",
                          (dir / "o.png").string(), "--mask-in", (dir / "m.png").string(), "--mask-out",
                          (dir / "mo.png").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(io::read_png(dir / "o.png"), scale(img, 1.5));
  EXPECT_EQ(io::read_mask(dir / "mo.png"), scale_mask(mask, 1.5));

  ASSERT_EQ(run_cli({"apply", "--op", "brightness", "--delta", "10", "--in", (dir / "i.png").string(), "--out",
                     (dir / "o2.png").string(), "--mask-in", (dir / "m.png").string(), "--mask-out",
                     (dir / "mo2.png").string()})
                .status,
            0);
  EXPECT_EQ(io::read_mask(dir / "mo2.png"), mask);
}

TEST(Cli, NoiseEchoesSeedAndIsReproducible) {
  TempDir dir;
  io::write_png(dir / "g.png", ImageBuffer(32, 32, 1, 128));
  const auto a = run_cli({"--seed", "99", "apply", "--op", "noise", "--in", (dir / "g.png").string(), "--out",
                          (dir / "n1.png").string()});
  const auto b = run_cli({"apply", "--op", "noise", "--seed", "99", "--in", (dir / "g.png").string(), "--out",
                          (dir / "n2.png").string()});
  const auto c = run_cli({"apply", "--op", "noise", "--seed", "100", "--in", (dir / "g.png").string(), "--out",
                          (dir / "n3.png").string()});
  ASSERT_EQ(a.status, 0);
  EXPECT_NE(a.err.find("seed=99"), std::string::npos);
  EXPECT_EQ(io::read_file(dir / "n1.png"), io::read_file(dir / "n2.png"));
  EXPECT_NE(io::read_file(dir / "n1.png"), io::read_file(dir / "n3.png"));
}

TEST(Cli, BalanceStatsAndManifest) {
  TempDir src, out;
  fixture::write_classification_tree(src.path(), {{"benign", 3}, {"malignant", 8}}, 12, 12, 3);
  const auto r = run_cli({"balance", "--input", src.path().string(), "--out", out.path().string(), "--target", "8",
                          "--seed", "7"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.err.find("seed=7"), std::string::npos);
  EXPECT_EQ(fixture::count_files(out / "benign"), 8u);
  EXPECT_EQ(fixture::count_files(out / "malignant"), 8u);

  const auto s = run_cli({"stats", "--input", out.path().string(), "--json", (src / "stats.json").string(),
                          "--manifest", (src / "manifest.json").string()});
  ASSERT_EQ(s.status, 0) << s.err;
  EXPECT_NE(s.out.find("class benign: 8"), std::string::npos);
  EXPECT_NE(s.out.find("dims 12x12x3: 16"), std::string::npos);
  std::ifstream js(src / "stats.json");
  const auto doc = nlohmann::json::parse(js);
  EXPECT_EQ(doc["classes"]["malignant"], 8);
  std::ifstream mf(src / "manifest.json");
  const auto man = nlohmann::json::parse(mf);
  EXPECT_EQ(man["task"], "classification");
  EXPECT_EQ(man["items"].size(), 16u);
  EXPECT_TRUE(man["items"][0].contains("label"));

  EXPECT_EQ(run_cli({"balance", "--input", src.path().string(), "--out", out.path().string(), "--target", "8",
                     "--ops", "fliph,blur"})
                .status,
            2);
  EXPECT_EQ(run_cli({"balance", "--input", src.path().string(), "--out", out.path().string(), "--target", "2"}).status,
            2);
}

TEST(Cli, BalanceReportsPartialFailure) {
  TempDir src, out;
  fixture::write_classification_tree(src.path(), {{"a", 2}, {"b", 3}}, 8, 8, 4);
  io::write_file(src / "a/a_000.png", {0, 1, 2});
  const auto r = run_cli({"--quiet", "balance", "--input", src.path().string(), "--out", out.path().string(),
                          "--target", "3"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, ExpandSegAndStats) {
  TempDir src, out;
  fixture::write_segmentation_tree(src.path(), 6, 2, 10, 10, 5);
  const auto r = run_cli({"expand-seg", "--root", src.path().string(), "--out", out.path().string(), "--count", "5",
                          "--alpha", "0.4", "--mode", "composite", "--seed", "3"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto s = run_cli({"stats", "--input", out.path().string(), "--task", "segmentation"});
  EXPECT_NE(s.out.find("split train: 11"), std::string::npos);
  EXPECT_NE(s.out.find("split test: 2"), std::string::npos);
  EXPECT_EQ(run_cli({"expand-seg", "--root", src.path().string(), "--out", out.path().string(), "--mode", "cutmix"}).status,
            2);
}

TEST(Cli, MixupSubcommand) {
  TempDir src, out;
  fixture::write_segmentation_tree(src.path(), 4, 0, 8, 8, 6);
  const auto r = run_cli({"mixup", "--images", (src / "train/images").string(), "--masks",
                          (src / "train/masks").string(), "--out", out.path().string(), "--count", "7"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(fixture::count_files(out / "images"), 7u);
  EXPECT_EQ(fixture::count_files(out / "masks"), 7u);
  for (const auto& e : fs::directory_iterator(out / "images")) {
    EXPECT_TRUE(fs::exists(out / "masks" / e.path().filename()));
    EXPECT_EQ(e.path().filename().string().rfind("mix_000", 0), 0u);
  }
}

TEST(Cli, DiceReportAndJson) {
  TempDir pred, truth, dir;
  io::write_png(pred / "x.png", ImageBuffer(2, 2, 1, std::vector<std::uint8_t>{200, 200, 10, 10}));
  io::write_mask(truth / "x.png", BinaryMask(2, 2, std::vector<std::uint8_t>{255, 0, 255, 0}));
  io::write_png(pred / "y.png", ImageBuffer(2, 2, 1, 0));
  io::write_mask(truth / "y.png", BinaryMask(2, 2));
  const auto r = run_cli({"dice", "--pred", pred.path().string(), "--truth", truth.path().string(), "--json",
                          (dir / "d.json").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "x.png dice=0.500000\ny.png dice=1.000000\nmean_dice=0.750000\n");
  std::ifstream js(dir / "d.json");
  const auto doc = nlohmann::json::parse(js);
  EXPECT_DOUBLE_EQ(doc["mean_dice"].get<double>(), 0.75);
  EXPECT_EQ(doc["items"][0]["id"], "x.png");

  // Raising the threshold empties x's prediction.
  const auto hi = run_cli({"dice", "--pred", pred.path().string(), "--truth", truth.path().string(), "--threshold", "201"});
  EXPECT_NE(hi.out.find("x.png dice=0.000000"), std::string::npos);

  io::write_mask(truth / "z.png", BinaryMask(2, 2));
  EXPECT_EQ(run_cli({"dice", "--pred", pred.path().string(), "--truth", truth.path().string()}).status, 1);
}
