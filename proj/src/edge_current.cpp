#include "edgeforce/edge_current.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace edgeforce {

std::size_t EdgeMap::count() const {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
}

GrayImage edge_image(const EdgeMap& edges) {
  GrayImage out(edges.width, edges.height, 0);
  for (int y = 0; y < edges.height; ++y)
    for (int x = 0; x < edges.width; ++x)
      if (edges.at(x, y)) out.at(x, y) = 255;
  return out;
}

EdgeMap edge_map_from_image(const GrayImage& image) {
  EdgeMap out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      if (image.at(x, y) != 0) out.set(x, y);
  return out;
}

EdgeMap threshold_mask(const GradientField& field, double percent) {
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw std::invalid_argument("threshold percent must be in [0, 100], got " +
                                std::to_string(percent));
  }
  const double t = percent / 100.0 * field.max_magnitude();
  EdgeMap mask(field.width, field.height);
  for (int y = 0; y < field.height; ++y)
    for (int x = 0; x < field.width; ++x)
      if (field.magnitude(x, y) > t) mask.set(x, y);
  return mask;
}

EdgeMap nonmax_suppress(const GradientField& field, const EdgeMap& mask) {
  if (mask.width != field.width || mask.height != field.height) {
    throw std::invalid_argument("mask and gradient field differ in size");
  }
  static constexpr std::array<std::array<int, 2>, 4> kPairs = {{
      {-1, 0},   // W  / E
      {0, -1},   // N  / S
      {-1, -1},  // NW / SE
      {1, -1},   // NE / SW
  }};

  EdgeMap out(field.width, field.height);
  for (int y = 0; y < field.height; ++y) {
    for (int x = 0; x < field.width; ++x) {
      if (!mask.at(x, y)) continue;
      const Vec2& g = field.at(x, y);
      const double m = field.magnitude(x, y);
      auto beats = [&](int dx, int dy) {
        const int nx = x + dx, ny = y + dy;
        const double n = field.contains(nx, ny) ? field.magnitude(nx, ny) : 0.0;
        const bool downhill = dx * g.x + dy * g.y < 0;
        return downhill ? m >= n : m > n;
      };
      int pairs = 0;
      for (const auto& [dx, dy] : kPairs) {
        if (beats(dx, dy) && beats(-dx, -dy)) ++pairs;
      }
      if (pairs >= 2) out.set(x, y);
    }
  }
  return out;
}

Vec2 rotate(const Vec2& g, Rotation rotation) {
  return rotation == Rotation::kDisplayCcw ? Vec2{g.y, -g.x} : Vec2{-g.y, g.x};
}

CurrentField extract_currents(const GradientField& field, const EdgeMap& edges,
                              Rotation rotation) {
  if (edges.width != field.width || edges.height != field.height) {
    throw std::invalid_argument("edge map and gradient field differ in size");
  }
  CurrentField out{field.width, field.height, {}};
  for (int y = 0; y < field.height; ++y) {
    for (int x = 0; x < field.width; ++x) {
      if (!edges.at(x, y) || field.at(x, y).is_zero()) continue;
      out.elements.push_back({{x, y}, rotate(field.at(x, y), rotation)});
    }
  }
  return out;
}

CurrentField flipped(const CurrentField& field) {
  CurrentField out = field;
  for (auto& e : out.elements) e.vector = -e.vector;
  return out;
}

EdgeExtraction extract_edge_currents(const GrayImage& image, double percent,
                                     Rotation rotation) {
  EdgeExtraction r;
  r.gradient = sobel(image);
  r.edges = nonmax_suppress(r.gradient, threshold_mask(r.gradient, percent));
  r.currents = extract_currents(r.gradient, r.edges, rotation);
  return r;
}

Direction direction_from_angle(double degrees) {
  double theta = std::fmod(degrees, 360.0);
  if (theta < 0) theta += 360.0;
  const auto k = static_cast<int>(std::floor((theta + 22.5) / 45.0)) % 8;
  return static_cast<Direction>(k);
}

Direction quantize_direction(const Vec2& v) {
  if (v.is_zero()) {
    throw std::invalid_argument("cannot quantize the zero vector");
  }
  return direction_from_angle(std::atan2(v.y, v.x) * 180.0 / std::numbers::pi);
}

std::string_view direction_name(Direction d) {
  static constexpr std::array<std::string_view, 8> kNames = {
      "E", "SE", "S", "SW", "W", "NW", "N", "NE"};
  return kNames[static_cast<int>(d)];
}

Vec2 direction_unit(Direction d) {
  const double angle = static_cast<int>(d) * std::numbers::pi / 4.0;
  return {std::cos(angle), std::sin(angle)};
}

std::string direction_grid(const CurrentField& field) {
  std::vector<std::string_view> cells(
      static_cast<std::size_t>(field.width) * field.height, "·");
  for (const auto& e : field.elements) {
    cells[static_cast<std::size_t>(e.position.y) * field.width + e.position.x] =
        direction_name(quantize_direction(e.vector));
  }
  std::string out;
  for (int y = 0; y < field.height; ++y) {
    for (int x = 0; x < field.width; ++x) {
      std::string_view c = cells[static_cast<std::size_t>(y) * field.width + x];
      if (x > 0) out += ' ';
      // "·" is two bytes but one column wide.
      const bool narrow = c.size() == 1 || c == "·";
      if (narrow) out += ' ';
      out += c;
    }
    out += '\n';
  }
  return out;
}

}  // namespace edgeforce
