#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "edgeforce/ampere_force.hpp"
#include "edgeforce/edge_current.hpp"
#include "edgeforce/field_render.hpp"

namespace edgeforce::cli {

enum class Command { kEdges, kCurrents, kForce, kRender, kPipeline, kMakeShape };

struct RunConfig {
  Command command = Command::kEdges;

  std::string frame1;  // edges/currents/make-shape use this as the only image
  std::string frame2;
  std::string field_in;  // render

  double threshold_percent = kDefaultThresholdPercent;
  ForceParams force;
  std::optional<std::string> roi_rect;
  std::optional<std::string> mask_path;
  bool swap = false;
  unsigned workers = 0;  // 0: EDGEFORCE_THREADS or hardware concurrency

  FieldFormat format = FieldFormat::kCsv;
  std::string output;  // primary output path, "" or "-" for stdout
  std::string magnitude_out;
  std::string grid_out;
  std::string json_out;
  std::string svg_out;
  std::string ppm_out;

  std::string overlay_path;
  bool overlay = true;  // pipeline: draw the source frame's edges
  ArrowStyle style = ArrowStyle::kQuantized;
  bool arrow_scale = false;
  int cell_size = 12;
  int width = 0;
  int height = 0;

  std::string shape;
  std::string size = "32x32";
  int foreground = 255;
  int background = 0;
  std::string shift;
};

/// Executes one command. Returns 0 on success; errors propagate as
/// exceptions.
int run(const RunConfig& config, std::ostream& out);

/// Parses argv, runs, and reports any failure as a one-line diagnostic on
/// err. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace edgeforce::cli
