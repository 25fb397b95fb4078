#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "medaug/raster.hpp"

namespace medaug::io {

/// Decode an 8-bit grayscale or RGB PNG (palette images expand to RGB).
/// Alpha channels and 16-bit samples are rejected with ErrorCode::Decode.
ImageBuffer read_png(const std::filesystem::path& path);
ImageBuffer decode_png(const std::vector<std::uint8_t>& bytes, const std::string& origin = "<memory>");

/// Read a grayscale PNG as a mask, thresholding at 128 so slightly lossy
/// sources still land on {0, 255}.
BinaryMask read_mask(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const ImageBuffer& image);
void write_png(const std::filesystem::path& path, const ImageBuffer& image);
void write_mask(const std::filesystem::path& path, const BinaryMask& mask);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace medaug::io
