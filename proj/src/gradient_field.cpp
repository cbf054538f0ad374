#include "edgeforce/gradient_field.hpp"

#include <algorithm>

namespace edgeforce {

double GradientField::max_magnitude() const {
  double best = 0;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) best = std::max(best, magnitude(x, y));
  return best;
}

GradientField sobel(const GrayImage& image) {
  const int w = image.width();
  const int h = image.height();
  GradientField field(w, h);
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      auto p = [&](int dx, int dy) { return int{image.at(x + dx, y + dy)}; };
      const int gx = (p(1, -1) + 2 * p(1, 0) + p(1, 1)) -
                     (p(-1, -1) + 2 * p(-1, 0) + p(-1, 1));
      const int gy = (p(-1, 1) + 2 * p(0, 1) + p(1, 1)) -
                     (p(-1, -1) + 2 * p(0, -1) + p(1, -1));
      field.at(x, y) = {static_cast<double>(gx), static_cast<double>(gy)};
    }
  }
  return field;
}

GrayImage magnitude_image(const GradientField& field) {
  GrayImage out(field.width, field.height, 0);
  const double peak = field.max_magnitude();
  if (peak == 0) return out;
  for (int y = 0; y < field.height; ++y)
    for (int x = 0; x < field.width; ++x)
      out.at(x, y) = static_cast<std::uint8_t>(
          std::lround(255.0 * field.magnitude(x, y) / peak));
  return out;
}

}  // namespace edgeforce
