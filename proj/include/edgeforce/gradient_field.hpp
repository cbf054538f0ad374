#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "edgeforce/raster_io.hpp"
#include "edgeforce/types.hpp"

namespace edgeforce {

/// Per-pixel (gx, gy) in intensity-per-pixel units. Border pixels are (0, 0).
struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<Vec2> vectors;

  GradientField() = default;
  GradientField(int w, int h)
      : width(w), height(h), vectors(static_cast<std::size_t>(w) * h) {}

  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
  const Vec2& at(int x, int y) const {
    return vectors[static_cast<std::size_t>(y) * width + x];
  }
  Vec2& at(int x, int y) {
    return vectors[static_cast<std::size_t>(y) * width + x];
  }

  // sqrt(gx^2 + gy^2); rotating the vector by 90 degrees leaves this
  // bitwise unchanged.
  double magnitude(int x, int y) const {
    const Vec2& g = at(x, y);
    return std::sqrt(g.x * g.x + g.y * g.y);
  }
  double max_magnitude() const;
};

/// Unnormalized 3x3 Sobel by correlation: gradient points toward brighter
/// pixels, gy > 0 where intensity increases downward.
GradientField sobel(const GrayImage& image);

/// Magnitude map rescaled so the maximum maps to 255 (debug output).
GrayImage magnitude_image(const GradientField& field);

}  // namespace edgeforce
