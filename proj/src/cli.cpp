#include "edgeforce/cli.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgeforce/raster_io.hpp"
#include "edgeforce/shapes.hpp"

namespace edgeforce::cli {

namespace {

bool to_stdout(const std::string& path) { return path.empty() || path == "-"; }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (to_stdout(path)) {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::pair<int, int> parse_pair(const std::string& text, char sep,
                               const char* what) {
  int a = 0, b = 0;
  const char* end = text.data() + text.size();
  auto r1 = std::from_chars(text.data(), end, a);
  if (r1.ec == std::errc() && r1.ptr != end && *r1.ptr == sep) {
    auto r2 = std::from_chars(r1.ptr + 1, end, b);
    if (r2.ec == std::errc() && r2.ptr == end) return {a, b};
  }
  throw std::invalid_argument(std::string("bad ") + what + " '" + text + "'");
}

std::string currents_json(const CurrentField& field) {
  nlohmann::json doc;
  doc["width"] = field.width;
  doc["height"] = field.height;
  auto elems = nlohmann::json::array();
  for (const auto& e : field.elements) {
    elems.push_back({{"x", e.position.x},
                     {"y", e.position.y},
                     {"cx", e.vector.x},
                     {"cy", e.vector.y},
                     {"direction", direction_name(quantize_direction(e.vector))}});
  }
  doc["elements"] = std::move(elems);
  return doc.dump(1) + "\n";
}

std::optional<RegionMask> region_of(const RunConfig& c) {
  if (c.roi_rect) return RegionMask::parse_rect(*c.roi_rect);
  if (c.mask_path) return RegionMask(load_pgm_file(*c.mask_path));
  return std::nullopt;
}

struct ForceRun {
  ForceField field;
  EdgeMap source_edges;
};

ForceRun compute_force(const RunConfig& c) {
  auto first = extract_edge_currents(load_pgm_file(c.frame1), c.threshold_percent);
  auto second = extract_edge_currents(load_pgm_file(c.frame2), c.threshold_percent);
  if (first.edges.width != second.edges.width ||
      first.edges.height != second.edges.height) {
    throw std::invalid_argument("frames differ in size: " + c.frame1 + " is " +
                                std::to_string(first.edges.width) + "x" +
                                std::to_string(first.edges.height) + ", " +
                                c.frame2 + " is " +
                                std::to_string(second.edges.width) + "x" +
                                std::to_string(second.edges.height));
  }
  auto& targets = c.swap ? second : first;
  auto& sources = c.swap ? first : second;
  ForceRun r;
  r.field = force_field(targets.currents, sources.currents, c.force,
                        region_of(c), {c.workers});
  r.source_edges = std::move(sources.edges);
  return r;
}

ArrowPlotSpec plot_spec(const RunConfig& c) {
  ArrowPlotSpec spec;
  spec.cell_size = c.cell_size;
  spec.style = c.style;
  spec.scale_by_magnitude = c.arrow_scale;
  spec.width = c.width;
  spec.height = c.height;
  if (!c.overlay_path.empty()) {
    spec.overlay = edge_map_from_image(load_pgm_file(c.overlay_path));
  }
  return spec;
}

void write_plot(const RunConfig& c, const ForceField& field,
                const ArrowPlotSpec& spec) {
  if (c.svg_out.empty() && c.ppm_out.empty()) {
    throw std::invalid_argument("nothing to render: give --svg and/or --ppm");
  }
  const auto plot = layout_arrows(field, spec);
  if (!c.svg_out.empty()) write_file(c.svg_out, to_svg(plot));
  if (!c.ppm_out.empty()) write_file(c.ppm_out, save_pnm(rasterize(plot)));
}

}  // namespace

int run(const RunConfig& c, std::ostream& out) {
  switch (c.command) {
    case Command::kEdges: {
      const auto ex = extract_edge_currents(load_pgm_file(c.frame1),
                                            c.threshold_percent);
      write_file(c.output, save_pnm(edge_image(ex.edges)));
      if (!c.magnitude_out.empty()) {
        write_file(c.magnitude_out, save_pnm(magnitude_image(ex.gradient)));
      }
      return 0;
    }
    case Command::kCurrents: {
      const auto ex = extract_edge_currents(load_pgm_file(c.frame1),
                                            c.threshold_percent);
      emit(c.grid_out, direction_grid(ex.currents), out);
      if (!c.json_out.empty()) write_file(c.json_out, currents_json(ex.currents));
      return 0;
    }
    case Command::kForce: {
      const auto r = compute_force(c);
      emit(c.output, serialize_field(r.field, c.format), out);
      return 0;
    }
    case Command::kRender: {
      const auto bytes = read_file(c.field_in);
      const std::string_view text(reinterpret_cast<const char*>(bytes.data()),
                                  bytes.size());
      const auto field = parse_field(text, sniff_format(text));
      write_plot(c, field, plot_spec(c));
      return 0;
    }
    case Command::kPipeline: {
      auto r = compute_force(c);
      if (!c.output.empty()) write_file(c.output, serialize_field(r.field, c.format));
      auto spec = plot_spec(c);
      if (!spec.overlay && c.overlay) spec.overlay = std::move(r.source_edges);
      write_plot(c, r.field, spec);
      return 0;
    }
    case Command::kMakeShape: {
      ShapeSpec spec;
      spec.geometry = parse_shape(c.shape);
      std::tie(spec.width, spec.height) = parse_pair(c.size, 'x', "size");
      if (c.foreground < 0 || c.foreground > 255 || c.background < 0 ||
          c.background > 255) {
        throw std::invalid_argument("intensities must be in [0, 255]");
      }
      spec.foreground = static_cast<std::uint8_t>(c.foreground);
      spec.background = static_cast<std::uint8_t>(c.background);
      if (!c.shift.empty()) {
        auto [dx, dy] = parse_pair(c.shift, ',', "shift");
        spec.geometry = translated(spec.geometry, dx, dy);
      }
      write_file(c.output, save_pnm(make_shape(spec)));
      return 0;
    }
  }
  return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  RunConfig c;
  CLI::App app{"Virtual edge-current force analysis between two grayscale frames"};
  app.require_subcommand(1);

  std::string cutoff = "inf";
  std::string format = "csv";

  auto add_threshold = [&](CLI::App* sub) {
    sub->add_option("--threshold-percent", c.threshold_percent,
                    "Edge threshold as percent of the maximum gradient magnitude")
        ->check(CLI::Range(0.0, 100.0));
  };
  auto add_force_flags = [&](CLI::App* sub) {
    sub->add_option("frame1", c.frame1, "Target frame (PGM)")->required();
    sub->add_option("frame2", c.frame2, "Source frame (PGM)")->required();
    add_threshold(sub);
    sub->add_option("--constant", c.force.A, "Force constant A (> 0)");
    sub->add_option("--cutoff", cutoff, "Source radius in pixels, or 'inf'");
    auto* roi = sub->add_option("--roi", c.roi_rect, "Target region x0,y0,x1,y1");
    auto* mask = sub->add_option("--mask", c.mask_path, "Target region mask (PGM)");
    roi->excludes(mask);
    sub->add_flag("--swap", c.swap, "Take targets from frame2, sources from frame1");
    sub->add_option("--format", format, "Field format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_render_flags = [&](CLI::App* sub) {
    sub->add_option("--svg", c.svg_out, "SVG output path");
    sub->add_option("--ppm", c.ppm_out, "PPM (P6) output path");
    sub->add_option("--overlay", c.overlay_path, "Edge map drawn in gray (PGM)");
    auto* q = sub->add_flag_callback(
        "--quantized", [&] { c.style = ArrowStyle::kQuantized; },
        "Eight-direction arrows (default)");
    auto* k = sub->add_flag_callback(
        "--continuous", [&] { c.style = ArrowStyle::kContinuous; },
        "Exact-angle arrows");
    q->excludes(k);
    sub->add_flag("--arrow-scale", c.arrow_scale, "Scale arrow length by magnitude");
    sub->add_option("--cell-size", c.cell_size, "Output pixels per frame pixel")
        ->check(CLI::Range(4, 256));
    sub->add_option("--width", c.width, "Frame width when no overlay is given");
    sub->add_option("--height", c.height, "Frame height when no overlay is given");
  };

  auto* edges = app.add_subcommand("edges", "Significant edge map of one frame");
  edges->add_option("input", c.frame1, "Input PGM")->required();
  edges->add_option("-o,--output", c.output, "Edge map PGM")->required();
  edges->add_option("--magnitude", c.magnitude_out, "Rescaled gradient magnitude PGM");
  add_threshold(edges);

  auto* currents = app.add_subcommand("currents", "Virtual current elements of one frame");
  currents->add_option("input", c.frame1, "Input PGM")->required();
  currents->add_option("--grid", c.grid_out, "Direction grid text (default stdout)");
  currents->add_option("--json", c.json_out, "Element list JSON");
  add_threshold(currents);

  auto* force = app.add_subcommand("force", "Force field on frame1's elements from frame2");
  add_force_flags(force);
  force->add_option("-o,--output", c.output, "Field output (default stdout)");

  auto* render = app.add_subcommand("render", "Arrow plot of a serialized force field");
  render->add_option("field", c.field_in, "Force field CSV or JSON")->required();
  add_render_flags(render);

  auto* pipeline = app.add_subcommand("pipeline", "force followed by render");
  add_force_flags(pipeline);
  pipeline->add_option("--field", c.output, "Also write the force field here");
  pipeline->add_flag_callback("--no-overlay", [&] { c.overlay = false; },
                              "Do not draw the source frame's edges");
  add_render_flags(pipeline);

  auto* shape = app.add_subcommand("make-shape", "Synthetic test image");
  shape->add_option("--shape", c.shape,
                    "rect:x0,y0,x1,y1 | ellipse:cx,cy,a,b | circle:cx,cy,r | "
                    "line:x0,y0,x1,y1 | polygon:x,y;x,y;...")
      ->required();
  shape->add_option("--size", c.size, "Canvas WxH");
  shape->add_option("--fg", c.foreground, "Foreground intensity");
  shape->add_option("--bg", c.background, "Background intensity");
  shape->add_option("--shift", c.shift, "Translate the shape by dx,dy");
  shape->add_option("-o,--output", c.output, "Output PGM")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*edges) c.command = Command::kEdges;
    if (*currents) c.command = Command::kCurrents;
    if (*force) c.command = Command::kForce;
    if (*render) c.command = Command::kRender;
    if (*pipeline) c.command = Command::kPipeline;
    if (*shape) c.command = Command::kMakeShape;
    c.format = format == "json" ? FieldFormat::kJson : FieldFormat::kCsv;
    if (cutoff != "inf") {
      std::size_t used = 0;
      c.force.cutoff = std::stod(cutoff, &used);
      if (used != cutoff.size()) throw std::invalid_argument("trailing characters");
    }
  } catch (const std::invalid_argument&) {
    err << "edgeforce: error: bad --cutoff '" << cutoff << "'\n";
    return 2;
  } catch (const std::out_of_range&) {
    err << "edgeforce: error: bad --cutoff '" << cutoff << "'\n";
    return 2;
  }

  try {
    return run(c, out);
  } catch (const std::exception& e) {
    err << "edgeforce: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace edgeforce::cli
