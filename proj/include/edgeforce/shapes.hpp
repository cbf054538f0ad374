#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "edgeforce/raster_io.hpp"

namespace edgeforce {

// Synthetic test scenes. Geometry is in pixel coordinates; pixel (x, y) has
// its center at (x, y).

/// Filled axis-aligned rectangle, inclusive corners.
struct RectShape {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

/// Filled ellipse: ((x-cx)/a)^2 + ((y-cy)/b)^2 <= 1. A zero semi-axis
/// collapses that axis to the center line.
struct EllipseShape {
  double cx = 0, cy = 0, a = 0, b = 0;
};

struct CircleShape {
  double cx = 0, cy = 0, r = 0;
};

/// One-pixel Bresenham segment.
struct LineShape {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

/// Filled simple polygon, even-odd rule at pixel centers.
struct PolygonShape {
  std::vector<Vec2> vertices;
};

using ShapeGeometry =
    std::variant<RectShape, EllipseShape, CircleShape, LineShape, PolygonShape>;

struct ShapeSpec {
  ShapeGeometry geometry;
  int width = 32;
  int height = 32;
  std::uint8_t foreground = 255;
  std::uint8_t background = 0;
};

/// Rasterizes the shape. Throws std::invalid_argument when the geometry
/// leaves the canvas or is malformed.
GrayImage make_shape(const ShapeSpec& spec);

/// Same shape moved by (dx, dy).
ShapeGeometry translated(const ShapeGeometry& geometry, double dx, double dy);

/// Parses "rect:x0,y0,x1,y1", "ellipse:cx,cy,a,b", "circle:cx,cy,r",
/// "line:x0,y0,x1,y1" or "polygon:x,y;x,y;...".
ShapeGeometry parse_shape(const std::string& text);

}  // namespace edgeforce
