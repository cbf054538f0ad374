#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "edgeforce/gradient_field.hpp"
#include "edgeforce/raster_io.hpp"
#include "edgeforce/types.hpp"

namespace edgeforce {

inline constexpr double kDefaultThresholdPercent = 20.0;

/// Row-major boolean map. Used both for the threshold mask and for the final
/// significant-edge map.
struct EdgeMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> flags;

  EdgeMap() = default;
  EdgeMap(int w, int h)
      : width(w), height(h), flags(static_cast<std::size_t>(w) * h, 0) {}

  bool at(int x, int y) const {
    return flags[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool v = true) {
    flags[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
  }
  std::size_t count() const;

  friend bool operator==(const EdgeMap&, const EdgeMap&) = default;
};

/// Edge pixels white (255) on black.
GrayImage edge_image(const EdgeMap& edges);
/// Nonzero pixels become edges.
EdgeMap edge_map_from_image(const GrayImage& image);

/// Keeps pixels whose magnitude strictly exceeds percent% of the field's
/// maximum magnitude. Throws std::invalid_argument if percent is outside
/// [0, 100].
EdgeMap threshold_mask(const GradientField& field, double percent);

/// Four-pair non-maximum suppression over the masked pixels.
///
/// A masked pixel survives when it beats both neighbors in at least two of
/// the pairs {W,E}, {N,S}, {NW,SE}, {NE,SW}. Out-of-bounds neighbors have
/// magnitude 0. "Beats" means strictly greater, except that a tie with a
/// neighbor lying against the gradient (on the darker side) also counts.
/// An ideal binary step produces two equal-magnitude pixels across the edge;
/// this keeps exactly the brighter one, and the rule is invariant under the
/// grid's rotations and reflections. Flat plateaus are still removed.
EdgeMap nonmax_suppress(const GradientField& field, const EdgeMap& mask);

/// Which 90-degree turn maps a gradient onto its current element.
enum class Rotation {
  kDisplayCcw,  // (gx, gy) -> (gy, -gx): counterclockwise as seen on screen
  kMathCcw,     // (gx, gy) -> (-gy, gx): counterclockwise with y pointing up
};

Vec2 rotate(const Vec2& gradient, Rotation rotation = Rotation::kDisplayCcw);

struct CurrentElement {
  Pixel position;
  Vec2 vector;

  friend bool operator==(const CurrentElement&, const CurrentElement&) = default;
};

/// Discrete virtual current of one frame, sorted by (y, x), at most one
/// element per pixel.
struct CurrentField {
  int width = 0;
  int height = 0;
  std::vector<CurrentElement> elements;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }

  friend bool operator==(const CurrentField&, const CurrentField&) = default;
};

/// One element per flagged pixel with a nonzero gradient.
CurrentField extract_currents(const GradientField& field, const EdgeMap& edges,
                              Rotation rotation = Rotation::kDisplayCcw);

/// Every element vector negated, i.e. the opposite rotation convention.
CurrentField flipped(const CurrentField& field);

/// Whole extraction chain for one frame.
struct EdgeExtraction {
  GradientField gradient;
  EdgeMap edges;
  CurrentField currents;
};

EdgeExtraction extract_edge_currents(
    const GrayImage& image, double percent = kDefaultThresholdPercent,
    Rotation rotation = Rotation::kDisplayCcw);

/// Compass sectors in increasing screen angle (y down).
enum class Direction { E, SE, S, SW, W, NW, N, NE };

/// Sector index floor((theta + 22.5) / 45) mod 8, theta in degrees.
Direction direction_from_angle(double degrees);
/// Throws std::invalid_argument on the zero vector.
Direction quantize_direction(const Vec2& v);
std::string_view direction_name(Direction d);
/// Unit vector of the sector center, y down.
Vec2 direction_unit(Direction d);

/// Text grid with one mnemonic per pixel: E, W, N, S, NE, NW, SE, SW or
/// "·" where there is no element.
std::string direction_grid(const CurrentField& field);

}  // namespace edgeforce
