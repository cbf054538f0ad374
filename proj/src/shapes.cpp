#include "edgeforce/shapes.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace edgeforce {

namespace {

[[noreturn]] void out_of_canvas(const std::string& what) {
  throw std::invalid_argument(what + " exceeds the canvas bounds");
}

bool inside(double x, double y, const ShapeSpec& spec) {
  return x >= 0 && y >= 0 && x <= spec.width - 1 && y <= spec.height - 1;
}

void fill_rect(GrayImage& img, const RectShape& r, const ShapeSpec& spec) {
  if (r.x0 > r.x1 || r.y0 > r.y1) {
    throw std::invalid_argument("rectangle corners out of order");
  }
  if (!inside(r.x0, r.y0, spec) || !inside(r.x1, r.y1, spec)) {
    out_of_canvas("rectangle");
  }
  for (int y = r.y0; y <= r.y1; ++y)
    for (int x = r.x0; x <= r.x1; ++x) img.at(x, y) = spec.foreground;
}

// Squared normalized offset along one semi-axis; a zero axis admits only
// the center line.
bool axis_term(double d, double semi, double& acc) {
  if (semi > 0) {
    acc += (d / semi) * (d / semi);
    return true;
  }
  return d == 0;
}

void fill_ellipse(GrayImage& img, const EllipseShape& e, const ShapeSpec& spec) {
  if (e.a < 0 || e.b < 0 || !std::isfinite(e.a) || !std::isfinite(e.b)) {
    throw std::invalid_argument("ellipse semi-axes must be non-negative");
  }
  if (!inside(e.cx - e.a, e.cy - e.b, spec) ||
      !inside(e.cx + e.a, e.cy + e.b, spec)) {
    out_of_canvas("ellipse");
  }
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      double acc = 0;
      if (axis_term(x - e.cx, e.a, acc) && axis_term(y - e.cy, e.b, acc) &&
          acc <= 1.0) {
        img.at(x, y) = spec.foreground;
      }
    }
  }
}

void draw_line(GrayImage& img, const LineShape& l, const ShapeSpec& spec) {
  if (!inside(l.x0, l.y0, spec) || !inside(l.x1, l.y1, spec)) {
    out_of_canvas("line");
  }
  int x = l.x0, y = l.y0;
  const int dx = std::abs(l.x1 - l.x0), sx = l.x0 < l.x1 ? 1 : -1;
  const int dy = -std::abs(l.y1 - l.y0), sy = l.y0 < l.y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    img.at(x, y) = spec.foreground;
    if (x == l.x1 && y == l.y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

void fill_polygon(GrayImage& img, const PolygonShape& p, const ShapeSpec& spec) {
  const auto& v = p.vertices;
  if (v.size() < 3) throw std::invalid_argument("polygon needs 3+ vertices");
  for (const auto& q : v) {
    if (!inside(q.x, q.y, spec)) out_of_canvas("polygon");
  }
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      bool in = false;
      for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        if ((v[i].y > y) != (v[j].y > y)) {
          double cross = v[j].x + (y - v[j].y) * (v[i].x - v[j].x) /
                                      (v[i].y - v[j].y);
          if (x < cross) in = !in;
        }
      }
      if (in) img.at(x, y) = spec.foreground;
    }
  }
}

std::vector<double> parse_numbers(const std::string& body, char sep,
                                  const std::string& full) {
  std::vector<double> out;
  const char* p = body.data();
  const char* end = body.data() + body.size();
  while (true) {
    double v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc()) {
      throw std::invalid_argument("bad shape '" + full + "'");
    }
    out.push_back(v);
    if (next == end) break;
    if (*next != sep) throw std::invalid_argument("bad shape '" + full + "'");
    p = next + 1;
  }
  return out;
}

int as_int(double v, const std::string& full) {
  if (v != std::floor(v)) {
    throw std::invalid_argument("shape '" + full + "' needs integer coordinates");
  }
  return static_cast<int>(v);
}

}  // namespace

GrayImage make_shape(const ShapeSpec& spec) {
  GrayImage img(spec.width, spec.height, spec.background);
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RectShape>) {
          fill_rect(img, g, spec);
        } else if constexpr (std::is_same_v<T, EllipseShape>) {
          fill_ellipse(img, g, spec);
        } else if constexpr (std::is_same_v<T, CircleShape>) {
          fill_ellipse(img, EllipseShape{g.cx, g.cy, g.r, g.r}, spec);
        } else if constexpr (std::is_same_v<T, LineShape>) {
          draw_line(img, g, spec);
        } else {
          fill_polygon(img, g, spec);
        }
      },
      spec.geometry);
  return img;
}

ShapeGeometry translated(const ShapeGeometry& geometry, double dx, double dy) {
  return std::visit(
      [&](auto g) -> ShapeGeometry {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RectShape> ||
                      std::is_same_v<T, LineShape>) {
          if (dx != std::floor(dx) || dy != std::floor(dy)) {
            throw std::invalid_argument("integer shift required");
          }
          const int ix = static_cast<int>(dx), iy = static_cast<int>(dy);
          g.x0 += ix;
          g.x1 += ix;
          g.y0 += iy;
          g.y1 += iy;
        } else if constexpr (std::is_same_v<T, PolygonShape>) {
          for (auto& v : g.vertices) v = v + Vec2{dx, dy};
        } else {
          g.cx += dx;
          g.cy += dy;
        }
        return g;
      },
      geometry);
}

ShapeGeometry parse_shape(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("bad shape '" + text + "', expected kind:params");
  }
  const std::string kind = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  auto need = [&](const std::vector<double>& v, std::size_t n) {
    if (v.size() != n) {
      throw std::invalid_argument("shape '" + text + "' needs " +
                                  std::to_string(n) + " numbers");
    }
  };
  if (kind == "rect" || kind == "line") {
    auto v = parse_numbers(body, ',', text);
    need(v, 4);
    int a = as_int(v[0], text), b = as_int(v[1], text), c = as_int(v[2], text),
        d = as_int(v[3], text);
    if (kind == "rect") return RectShape{a, b, c, d};
    return LineShape{a, b, c, d};
  }
  if (kind == "ellipse") {
    auto v = parse_numbers(body, ',', text);
    need(v, 4);
    return EllipseShape{v[0], v[1], v[2], v[3]};
  }
  if (kind == "circle") {
    auto v = parse_numbers(body, ',', text);
    need(v, 3);
    return CircleShape{v[0], v[1], v[2]};
  }
  if (kind == "polygon") {
    PolygonShape poly;
    std::size_t start = 0;
    while (start <= body.size()) {
      auto stop = body.find(';', start);
      if (stop == std::string::npos) stop = body.size();
      auto v = parse_numbers(body.substr(start, stop - start), ',', text);
      need(v, 2);
      poly.vertices.push_back({v[0], v[1]});
      start = stop + 1;
    }
    return poly;
  }
  throw std::invalid_argument("unknown shape kind '" + kind + "'");
}

}  // namespace edgeforce
