#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "edgeforce/types.hpp"

namespace edgeforce {

/// 8-bit single-channel raster, row-major, y down. Both dimensions must be at
/// least 3 so that every image has a Sobel interior.
class GrayImage {
 public:
  static constexpr int kMinSide = 3;

  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }
  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::uint8_t at(int x, int y) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t& at(int x, int y) {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Interleaved 8-bit RGB raster, used for rendered plots.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel

  RgbImage() = default;
  RgbImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, fill) {}

  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    if (x < 0 || y < 0 || x >= width || y >= height) return;
    auto i = (static_cast<std::size_t>(y) * width + x) * 3;
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Malformed PNM input. offset is the byte position where parsing failed.
class PnmError : public std::runtime_error {
 public:
  PnmError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Decode a P2 (ASCII) or P5 (binary) PGM. maxval must be in [1, 255];
/// samples are rescaled to 0..255 when maxval < 255.
GrayImage load_pgm(std::span<const std::uint8_t> bytes);

/// P5 encoding, maxval 255.
std::vector<std::uint8_t> save_pnm(const GrayImage& image);
/// P6 encoding, maxval 255.
std::vector<std::uint8_t> save_pnm(const RgbImage& image);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> bytes);
void write_file(const std::filesystem::path& path, const std::string& text);

GrayImage load_pgm_file(const std::filesystem::path& path);

/// Inclusive pixel rectangle.
struct RectRegion {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

/// Restricts which target elements get reported. Either a rectangle or a
/// bitmap the size of the frame (nonzero = included).
class RegionMask {
 public:
  explicit RegionMask(RectRegion rect) : region_(rect) {}
  explicit RegionMask(GrayImage bitmap) : region_(std::move(bitmap)) {}

  /// Parses "x0,y0,x1,y1".
  static RegionMask parse_rect(const std::string& text);

  /// Throws std::invalid_argument unless the mask fits a width x height frame.
  void validate(int width, int height) const;
  bool contains(Pixel p) const;

  bool is_rect() const { return std::holds_alternative<RectRegion>(region_); }

 private:
  std::variant<RectRegion, GrayImage> region_;
};

}  // namespace edgeforce
