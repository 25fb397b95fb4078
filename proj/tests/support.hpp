#pragma once

// Shared fixtures: random rasters, throwaway directories, synthetic dataset
// trees and a content digest for whole output trees.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <string>

#include "medaug/png_io.hpp"
#include "medaug/raster.hpp"

namespace medaug::fixture {

namespace fs = std::filesystem;

class TempDir {
public:
  explicit TempDir(const std::string& tag = "medaug") {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            (tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

private:
  fs::path path_;
};

inline ImageBuffer random_image(std::mt19937_64& gen, int w, int h, int ch) {
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * h * ch);
  for (auto& v : s) v = static_cast<std::uint8_t>(dist(gen));
  return ImageBuffer(w, h, ch, std::move(s));
}

inline BinaryMask random_mask(std::mt19937_64& gen, int w, int h, double p_fg = 0.5) {
  std::bernoulli_distribution fg(p_fg);
  std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * h);
  for (auto& v : s) v = fg(gen) ? 255 : 0;
  return BinaryMask(w, h, std::move(s));
}

inline std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Relative path -> content hash for every regular file under `root`.
inline std::map<std::string, std::uint64_t> tree_digest(const fs::path& root) {
  std::map<std::string, std::uint64_t> out;
  if (!fs::exists(root)) return out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    out[fs::relative(e.path(), root).generic_string()] = fnv1a(bytes);
  }
  return out;
}

inline std::size_t count_files(const fs::path& dir) {
  if (!fs::exists(dir)) return 0;
  return static_cast<std::size_t>(std::count_if(fs::directory_iterator(dir), fs::directory_iterator{},
                                                [](const auto& e) { return e.is_regular_file(); }));
}

inline std::string numbered(const std::string& prefix, std::size_t i) {
  std::string n = std::to_string(i);
  return prefix + std::string(n.size() < 3 ? 3 - n.size() : 0, '0') + n + ".png";
}

/// label -> count tree of random RGB PNGs.
inline void write_classification_tree(const fs::path& root, const std::map<std::string, std::size_t>& counts,
                                      int w, int h, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (const auto& [label, n] : counts) {
    for (std::size_t i = 0; i < n; ++i) {
      io::write_png(root / label / numbered(label + "_", i), random_image(gen, w, h, 3));
    }
  }
}

inline void write_segmentation_tree(const fs::path& root, std::size_t train, std::size_t test, int w, int h,
                                    std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (const auto& [split, n] : {std::pair<std::string, std::size_t>{"train", train}, {"test", test}}) {
    fs::create_directories(root / split / "images");
    fs::create_directories(root / split / "masks");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string name = numbered(split + "_", i);
      io::write_png(root / split / "images" / name, random_image(gen, w, h, 3));
      io::write_mask(root / split / "masks" / name, random_mask(gen, w, h, 0.3));
    }
  }
}

}  // namespace medaug::fixture
