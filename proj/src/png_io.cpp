#include "medaug/png_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>

namespace medaug::io {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "short write to " + path.string());
}

ImageBuffer decode_png(const std::vector<std::uint8_t>& bytes, const std::string& origin) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::Decode, origin + ": " + img.message);
  }
  if (img.format & PNG_FORMAT_FLAG_ALPHA) {
    png_image_free(&img);
    throw Error(ErrorCode::Decode, origin + ": alpha channels are not supported");
  }
  if (img.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&img);
    throw Error(ErrorCode::Decode, origin + ": 16-bit samples are not supported");
  }
  const bool color = (img.format & PNG_FORMAT_FLAG_COLOR) != 0;
  img.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  const int width = static_cast<int>(img.width);
  const int height = static_cast<int>(img.height);
  std::vector<std::uint8_t> samples(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, samples.data(), 0, nullptr)) {
    const std::string msg = img.message;
    png_image_free(&img);
    throw Error(ErrorCode::Decode, origin + ": " + msg);
  }
  return ImageBuffer(width, height, channels, std::move(samples));
}

ImageBuffer read_png(const std::filesystem::path& path) {
  return decode_png(read_file(path), path.string());
}

BinaryMask read_mask(const std::filesystem::path& path) {
  const ImageBuffer gray = read_png(path);
  if (gray.channels() != 1) {
    throw Error(ErrorCode::ChannelMismatch, path.string() + ": masks must be grayscale");
  }
  return BinaryMask::from_gray(gray, 128);
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& image) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = image.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&img, nullptr, &size, 0, image.data(), 0, nullptr)) {
    throw Error(ErrorCode::Io, std::string("png size query failed: ") + img.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&img, out.data(), &size, 0, image.data(), 0, nullptr)) {
    throw Error(ErrorCode::Io, std::string("png encode failed: ") + img.message);
  }
  out.resize(size);
  return out;
}

void write_png(const std::filesystem::path& path, const ImageBuffer& image) {
  write_file(path, encode_png(image));
}

void write_mask(const std::filesystem::path& path, const BinaryMask& mask) {
  write_png(path, mask.as_image());
}

}  // namespace medaug::io
