#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgeforce/ampere_force.hpp"
#include "edgeforce/edge_current.hpp"
#include "edgeforce/raster_io.hpp"

namespace edgeforce {

enum class FieldFormat { kCsv, kJson };

/// CSV: header "x,y,fx,fy,mag" then one row per sample. JSON: params echo,
/// frame size and a "samples" array. Reals use shortest round-trip form.
std::string serialize_field(const ForceField& field, FieldFormat format);

/// Inverse of serialize_field. CSV carries no params or frame size, so those
/// come back as defaults. Throws std::runtime_error on malformed input.
ForceField parse_field(std::string_view text, FieldFormat format);

/// Guesses from the first non-space character ('{' means JSON).
FieldFormat sniff_format(std::string_view text);

enum class ArrowStyle {
  kQuantized,   // one of eight compass glyphs
  kContinuous,  // exact force angle
};

struct ArrowPlotSpec {
  int cell_size = 12;  // output pixels per frame pixel, >= 4
  ArrowStyle style = ArrowStyle::kQuantized;
  bool scale_by_magnitude = false;
  std::optional<EdgeMap> overlay;  // drawn mid-gray beneath the arrows
  std::uint8_t background = 255;
  // Frame size; 0 falls back to the overlay, then the field, then the
  // bounding box of the samples.
  int width = 0;
  int height = 0;
};

/// Geometry of one sample's glyph in output coordinates.
struct Glyph {
  Pixel cell;
  bool dot = false;  // zero force
  Vec2 center;
  Vec2 tail, tip, head_left, head_right;
  double angle = 0.0;  // radians, y down
  std::optional<Direction> direction;  // quantized style only
};

struct ArrowPlot {
  int width = 0;   // output pixels
  int height = 0;
  int cell_size = 0;
  std::uint8_t background = 255;
  std::vector<Pixel> gray_cells;
  std::vector<Glyph> glyphs;
};

/// Throws std::invalid_argument on a bad cell size or when the overlay,
/// field and explicit frame sizes disagree.
ArrowPlot layout_arrows(const ForceField& field, const ArrowPlotSpec& spec);

RgbImage rasterize(const ArrowPlot& plot);
std::string to_svg(const ArrowPlot& plot);

struct RenderedPlot {
  RgbImage raster;
  std::string svg;
};

RenderedPlot render_arrows(const ForceField& field, const ArrowPlotSpec& spec);

/// Shortest decimal string that parses back to exactly v.
std::string format_real(double v);

}  // namespace edgeforce
