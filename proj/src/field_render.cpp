#include "edgeforce/field_render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace edgeforce {

namespace {

using json = nlohmann::json;

double parse_real(std::string_view s, std::size_t line) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": bad number '" +
                             std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": bad integer '" +
                             std::string(s) + "'");
  }
  return v;
}

std::string serialize_csv(const ForceField& field) {
  std::string out = "x,y,fx,fy,mag\n";
  for (const auto& s : field.samples) {
    out += std::to_string(s.position.x);
    out += ',';
    out += std::to_string(s.position.y);
    out += ',';
    out += format_real(s.force.x);
    out += ',';
    out += format_real(s.force.y);
    out += ',';
    out += format_real(s.magnitude);
    out += '\n';
  }
  return out;
}

std::string serialize_json(const ForceField& field) {
  json doc;
  doc["A"] = field.params.A;
  doc["cutoff"] = field.params.has_cutoff() ? json(field.params.cutoff) : json();
  doc["width"] = field.width;
  doc["height"] = field.height;
  json samples = json::array();
  for (const auto& s : field.samples) {
    samples.push_back({{"x", s.position.x},
                       {"y", s.position.y},
                       {"fx", s.force.x},
                       {"fy", s.force.y},
                       {"mag", s.magnitude}});
  }
  doc["samples"] = std::move(samples);
  return doc.dump(1) + "\n";
}

ForceField parse_csv(std::string_view text) {
  ForceField field;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != "x,y,fx,fy,mag") {
        throw std::runtime_error("line 1: expected header x,y,fx,fy,mag");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    std::string_view cols[5];
    std::size_t start = 0;
    for (int i = 0; i < 5; ++i) {
      auto comma = line.find(',', start);
      if ((i < 4) == (comma == std::string_view::npos)) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": expected 5 columns");
      }
      if (comma == std::string_view::npos) comma = line.size();
      cols[i] = line.substr(start, comma - start);
      start = comma + 1;
    }
    ForceSample s;
    s.position = {parse_int(cols[0], line_no), parse_int(cols[1], line_no)};
    s.force = {parse_real(cols[2], line_no), parse_real(cols[3], line_no)};
    s.magnitude = parse_real(cols[4], line_no);
    field.samples.push_back(s);
  }
  if (!header_seen) throw std::runtime_error("empty CSV, missing header");
  return field;
}

ForceField parse_json(std::string_view text) {
  ForceField field;
  try {
    const json doc = json::parse(text);
    field.params.A = doc.at("A").get<double>();
    if (!doc.at("cutoff").is_null()) field.params.cutoff = doc["cutoff"].get<double>();
    field.width = doc.value("width", 0);
    field.height = doc.value("height", 0);
    for (const auto& s : doc.at("samples")) {
      field.samples.push_back({{s.at("x").get<int>(), s.at("y").get<int>()},
                               {s.at("fx").get<double>(), s.at("fy").get<double>()},
                               s.at("mag").get<double>()});
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("bad force field JSON: ") + e.what());
  }
  return field;
}

Vec2 rotated(Vec2 v, double radians) {
  const double c = std::cos(radians), s = std::sin(radians);
  return {v.x * c - v.y * s, v.x * s + v.y * c};
}

void plot_segment(RgbImage& img, Vec2 a, Vec2 b) {
  int x0 = static_cast<int>(std::floor(a.x)), y0 = static_cast<int>(std::floor(a.y));
  const int x1 = static_cast<int>(std::floor(b.x)), y1 = static_cast<int>(std::floor(b.y));
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    img.set(x0, y0, 0, 0, 0);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

double dot_radius(int cell) { return cell / 10.0 + 0.5; }

}  // namespace

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string serialize_field(const ForceField& field, FieldFormat format) {
  return format == FieldFormat::kCsv ? serialize_csv(field) : serialize_json(field);
}

ForceField parse_field(std::string_view text, FieldFormat format) {
  return format == FieldFormat::kCsv ? parse_csv(text) : parse_json(text);
}

FieldFormat sniff_format(std::string_view text) {
  auto i = text.find_first_not_of(" \t\r\n");
  return i != std::string_view::npos && text[i] == '{' ? FieldFormat::kJson
                                                       : FieldFormat::kCsv;
}

ArrowPlot layout_arrows(const ForceField& field, const ArrowPlotSpec& spec) {
  if (spec.cell_size < 4) {
    throw std::invalid_argument("cell size must be at least 4, got " +
                                std::to_string(spec.cell_size));
  }
  int w = spec.width, h = spec.height;
  if (w <= 0 || h <= 0) {
    if (spec.overlay) {
      w = spec.overlay->width;
      h = spec.overlay->height;
    } else if (field.width > 0 && field.height > 0) {
      w = field.width;
      h = field.height;
    } else {
      w = h = 1;
      for (const auto& s : field.samples) {
        w = std::max(w, s.position.x + 1);
        h = std::max(h, s.position.y + 1);
      }
    }
  }
  auto mismatch = [&](const char* what, int ow, int oh) {
    throw std::invalid_argument(std::string(what) + " is " + std::to_string(ow) +
                                "x" + std::to_string(oh) + ", plot frame is " +
                                std::to_string(w) + "x" + std::to_string(h));
  };
  if (spec.overlay && (spec.overlay->width != w || spec.overlay->height != h)) {
    mismatch("overlay", spec.overlay->width, spec.overlay->height);
  }
  if (field.width > 0 && (field.width != w || field.height != h)) {
    mismatch("force field frame", field.width, field.height);
  }

  const int c = spec.cell_size;
  ArrowPlot plot;
  plot.width = w * c;
  plot.height = h * c;
  plot.cell_size = c;
  plot.background = spec.background;
  if (spec.overlay) {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (spec.overlay->at(x, y)) plot.gray_cells.push_back({x, y});
  }

  double peak = 0;
  for (const auto& s : field.samples) peak = std::max(peak, s.magnitude);

  for (const auto& s : field.samples) {
    if (s.position.x < 0 || s.position.y < 0 || s.position.x >= w ||
        s.position.y >= h) {
      throw std::invalid_argument("sample (" + std::to_string(s.position.x) +
                                  ", " + std::to_string(s.position.y) +
                                  ") lies outside the plot frame");
    }
    Glyph g;
    g.cell = s.position;
    g.center = {s.position.x * c + c / 2.0, s.position.y * c + c / 2.0};
    if (s.force.is_zero()) {
      g.dot = true;
      g.tail = g.tip = g.head_left = g.head_right = g.center;
      plot.glyphs.push_back(g);
      continue;
    }
    Vec2 unit;
    if (spec.style == ArrowStyle::kQuantized) {
      g.direction = quantize_direction(s.force);
      unit = direction_unit(*g.direction);
      g.angle = static_cast<int>(*g.direction) * std::numbers::pi / 4.0;
    } else {
      g.angle = std::atan2(s.force.y, s.force.x);
      unit = {std::cos(g.angle), std::sin(g.angle)};
    }
    double half = 0.4 * c;
    if (spec.scale_by_magnitude && peak > 0) {
      half *= std::max(s.magnitude / peak, 0.15);
    }
    g.tail = g.center - unit * half;
    g.tip = g.center + unit * half;
    const double head = 0.25 * c;
    g.head_left = g.tip + rotated(-unit, std::numbers::pi / 6) * head;
    g.head_right = g.tip + rotated(-unit, -std::numbers::pi / 6) * head;
    plot.glyphs.push_back(g);
  }
  return plot;
}

RgbImage rasterize(const ArrowPlot& plot) {
  RgbImage img(plot.width, plot.height, plot.background);
  const int c = plot.cell_size;
  for (const auto& cell : plot.gray_cells)
    for (int y = cell.y * c; y < (cell.y + 1) * c; ++y)
      for (int x = cell.x * c; x < (cell.x + 1) * c; ++x) img.set(x, y, 128, 128, 128);

  for (const auto& g : plot.glyphs) {
    if (g.dot) {
      const double r = dot_radius(c);
      for (int y = static_cast<int>(g.center.y - r); y <= g.center.y + r; ++y)
        for (int x = static_cast<int>(g.center.x - r); x <= g.center.x + r; ++x) {
          const double dx = x + 0.5 - g.center.x, dy = y + 0.5 - g.center.y;
          if (dx * dx + dy * dy <= r * r) img.set(x, y, 0, 0, 0);
        }
      continue;
    }
    plot_segment(img, g.tail, g.tip);
    plot_segment(img, g.tip, g.head_left);
    plot_segment(img, g.tip, g.head_right);
  }
  return img;
}

std::string to_svg(const ArrowPlot& plot) {
  std::ostringstream os;
  const auto bg = std::to_string(plot.background);
  const int c = plot.cell_size;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << plot.width << "\" height=\"" << plot.height << "\" viewBox=\"0 0 "
     << plot.width << ' ' << plot.height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << plot.width << "\" height=\""
     << plot.height << "\" fill=\"rgb(" << bg << ',' << bg << ',' << bg
     << ")\"/>\n";
  if (!plot.gray_cells.empty()) {
    os << "<g fill=\"rgb(128,128,128)\">\n";
    for (const auto& cell : plot.gray_cells) {
      os << "<rect x=\"" << cell.x * c << "\" y=\"" << cell.y * c
         << "\" width=\"" << c << "\" height=\"" << c << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"black\">\n";
  auto line = [&](const char* cls, Vec2 a, Vec2 b) {
    os << "<line class=\"" << cls << "\" x1=\"" << format_real(a.x) << "\" y1=\""
       << format_real(a.y) << "\" x2=\"" << format_real(b.x) << "\" y2=\""
       << format_real(b.y) << "\"/>\n";
  };
  for (const auto& g : plot.glyphs) {
    if (g.dot) {
      os << "<circle cx=\"" << format_real(g.center.x) << "\" cy=\""
         << format_real(g.center.y) << "\" r=\"" << format_real(dot_radius(c))
         << "\" stroke=\"none\"/>\n";
      continue;
    }
    line("shaft", g.tail, g.tip);
    line("head", g.tip, g.head_left);
    line("head", g.tip, g.head_right);
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

RenderedPlot render_arrows(const ForceField& field, const ArrowPlotSpec& spec) {
  const ArrowPlot plot = layout_arrows(field, spec);
  return {rasterize(plot), to_svg(plot)};
}

}  // namespace edgeforce
