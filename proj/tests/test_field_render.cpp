#include <gtest/gtest.h>

#include <cstring>
#include <limits>
#include <random>
#include <numbers>
#include <regex>

#include "edgeforce/field_render.hpp"
#include "edgeforce/shapes.hpp"

using namespace edgeforce;

namespace {

ForceField rect_scene() {
  const RectShape rect{8, 12, 19, 21};
  return force_field(extract_edge_currents(make_shape({translated(rect, 5, -4)})).currents,
                     extract_edge_currents(make_shape({rect})).currents, {});
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void expect_same_samples(const ForceField& a, const ForceField& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a.samples[i].position, b.samples[i].position);
    ASSERT_TRUE(same_bits(a.samples[i].force.x, b.samples[i].force.x));
    ASSERT_TRUE(same_bits(a.samples[i].force.y, b.samples[i].force.y));
    ASSERT_TRUE(same_bits(a.samples[i].magnitude, b.samples[i].magnitude));
  }
}

int count_of(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(SerializeField, EmptyCsvIsHeaderOnly) {
  EXPECT_EQ(serialize_field(ForceField{}, FieldFormat::kCsv), "x,y,fx,fy,mag\n");
}

TEST(SerializeField, HandExampleRow) {
  const auto sample = element_force({{0, 0}, {1, 0}}, {0, 0, {{{0, 5}, {1, 0}}}}, {});
  ForceField f;
  f.samples.push_back(sample);
  EXPECT_EQ(serialize_field(f, FieldFormat::kCsv), "x,y,fx,fy,mag\n0,0,0,0.04,0.04\n");
}

TEST(SerializeField, RectangleSceneRoundTrips) {
  const auto f = rect_scene();
  ASSERT_GT(f.size(), 10u);
  expect_same_samples(parse_field(serialize_field(f, FieldFormat::kCsv), FieldFormat::kCsv), f);
  const auto j = parse_field(serialize_field(f, FieldFormat::kJson), FieldFormat::kJson);
  expect_same_samples(j, f);
  EXPECT_EQ(j.params, f.params);
  EXPECT_EQ(j.width, 32);
  EXPECT_EQ(j.height, 32);
}

TEST(SerializeField, JsonCarriesFiniteCutoff) {
  ForceField f;
  f.params = {0.25, 16.0};
  const auto text = serialize_field(f, FieldFormat::kJson);
  EXPECT_NE(text.find("\"cutoff\": 16.0"), std::string::npos);
  EXPECT_EQ(parse_field(text, FieldFormat::kJson).params, f.params);
  EXPECT_NE(serialize_field(ForceField{}, FieldFormat::kJson).find("\"cutoff\": null"),
            std::string::npos);
}

TEST(SerializeProperty, ArbitraryRealsRoundTripExactly) {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<std::uint64_t> bits;
  std::uniform_int_distribution<int> coord(-1000, 1000);
  for (int n = 0; n < 20; ++n) {
    ForceField f;
    f.params.A = 0.1 * (n + 1);
    for (int i = 0; i < 100; ++i) {
      double v[3];
      for (double& d : v) {
        do {
          const std::uint64_t b = bits(rng);
          std::memcpy(&d, &b, sizeof d);
        } while (!std::isfinite(d));
      }
      f.samples.push_back({{coord(rng), coord(rng)}, {v[0], v[1]}, v[2]});
    }
    f.samples.push_back({{0, 0}, {-0.0, 5e-324}, std::numeric_limits<double>::max()});
    expect_same_samples(parse_field(serialize_field(f, FieldFormat::kCsv), FieldFormat::kCsv), f);
    expect_same_samples(parse_field(serialize_field(f, FieldFormat::kJson), FieldFormat::kJson), f);
  }
}

TEST(ParseField, RejectsMalformedInput) {
  EXPECT_THROW(parse_field("", FieldFormat::kCsv), std::runtime_error);
  EXPECT_THROW(parse_field("x,y,fx,fy\n", FieldFormat::kCsv), std::runtime_error);
  EXPECT_THROW(parse_field("x,y,fx,fy,mag\n1,2,3,4\n", FieldFormat::kCsv), std::runtime_error);
  EXPECT_THROW(parse_field("x,y,fx,fy,mag\n1,2,3,4,5,6\n", FieldFormat::kCsv), std::runtime_error);
  EXPECT_THROW(parse_field("x,y,fx,fy,mag\n1,2,a,4,5\n", FieldFormat::kCsv), std::runtime_error);
  EXPECT_THROW(parse_field("x,y,fx,fy,mag\n1.5,2,3,4,5\n", FieldFormat::kCsv), std::runtime_error);
  EXPECT_THROW(parse_field("{\"A\": 1}", FieldFormat::kJson), std::runtime_error);
  EXPECT_THROW(parse_field("{", FieldFormat::kJson), std::runtime_error);
  EXPECT_EQ(parse_field("x,y,fx,fy,mag\r\n1,2,3,4,5\r\n", FieldFormat::kCsv).size(), 1u);
}

TEST(SniffFormat, BraceMeansJson) {
  EXPECT_EQ(sniff_format("  {\"A\":1}"), FieldFormat::kJson);
  EXPECT_EQ(sniff_format("x,y,fx,fy,mag\n"), FieldFormat::kCsv);
}

TEST(RenderArrows, SouthGlyphForDownwardForce) {
  ForceField f;
  f.samples.push_back(make_sample({1, 1}, {0, 0.04}));
  ArrowPlotSpec spec;
  spec.width = spec.height = 3;
  const auto plot = layout_arrows(f, spec);
  ASSERT_EQ(plot.glyphs.size(), 1u);
  EXPECT_EQ(plot.glyphs[0].direction, Direction::S);
  EXPECT_GT(plot.glyphs[0].tip.y, plot.glyphs[0].tail.y);
  EXPECT_NEAR(plot.glyphs[0].tip.x, plot.glyphs[0].tail.x, 1e-12);
  EXPECT_EQ(plot.width, 36);
}

TEST(RenderArrows, ZeroForceIsDot) {
  ForceField f;
  f.samples.push_back(make_sample({0, 0}, {0, 0}));
  ArrowPlotSpec spec;
  spec.width = spec.height = 3;
  const auto r = render_arrows(f, spec);
  EXPECT_EQ(count_of(r.svg, "<circle"), 1);
  EXPECT_EQ(count_of(r.svg, "<line"), 0);
  // Dot centered in cell (0, 0) at (6, 6).
  const auto i = (6u * r.raster.width + 6u) * 3;
  EXPECT_EQ(r.raster.rgb[i], 0);
}

TEST(RenderArrows, OverlayOnlyWhenFieldEmpty) {
  const RectShape rect{8, 12, 19, 21};
  ArrowPlotSpec spec;
  spec.overlay = extract_edge_currents(make_shape({rect})).edges;
  const auto r = render_arrows(ForceField{}, spec);
  const std::size_t ring = spec.overlay->count();
  EXPECT_EQ(ring, 2u * 12 + 2u * 10 - 4);
  std::size_t gray = 0, white = 0;
  for (std::size_t i = 0; i < r.raster.rgb.size(); i += 3) {
    const auto v = r.raster.rgb[i];
    if (v == 128) ++gray;
    else if (v == 255) ++white;
  }
  EXPECT_EQ(gray, ring * 144);
  EXPECT_EQ(gray + white, r.raster.rgb.size() / 3);
  EXPECT_EQ(count_of(r.svg, "<rect"), static_cast<int>(ring) + 1);
  EXPECT_EQ(count_of(r.svg, "<line"), 0);
  // Gray cell for the top-left ring pixel.
  const auto i = ((12u * 12 + 5) * r.raster.width + 8u * 12 + 5) * 3;
  EXPECT_EQ(r.raster.rgb[i], 128);
}

TEST(RenderArrows, GlyphDirectionMatchesQuantizer) {
  const auto f = rect_scene();
  const auto plot = layout_arrows(f, {});
  ASSERT_EQ(plot.glyphs.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.samples[i].force.is_zero()) {
      EXPECT_TRUE(plot.glyphs[i].dot);
      continue;
    }
    ASSERT_EQ(plot.glyphs[i].direction, quantize_direction(f.samples[i].force));
  }
}

TEST(RenderArrows, ContinuousSvgAnglesMatchForces) {
  const auto f = rect_scene();
  ArrowPlotSpec spec;
  spec.style = ArrowStyle::kContinuous;
  const auto svg = render_arrows(f, spec).svg;
  const std::regex shaft(
      R"re(<line class="shaft" x1="([^"]+)" y1="([^"]+)" x2="([^"]+)" y2="([^"]+)"/>)re");
  std::size_t i = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), shaft);
       it != std::sregex_iterator(); ++it, ++i) {
    while (i < f.size() && f.samples[i].force.is_zero()) ++i;
    ASSERT_LT(i, f.size());
    const double x1 = std::stod((*it)[1]), y1 = std::stod((*it)[2]);
    const double x2 = std::stod((*it)[3]), y2 = std::stod((*it)[4]);
    const double want = std::atan2(f.samples[i].force.y, f.samples[i].force.x);
    const double got = std::atan2(y2 - y1, x2 - x1);
    ASSERT_NEAR(std::remainder(got - want, 2 * std::numbers::pi), 0.0, 1e-9);
  }
  EXPECT_EQ(i, f.size());
}

TEST(RenderArrows, RasterAndSvgShareGeometry) {
  const auto f = rect_scene();
  ArrowPlotSpec spec;
  spec.overlay = extract_edge_currents(make_shape({RectShape{8, 12, 19, 21}})).edges;
  const auto plot = layout_arrows(f, spec);
  const auto raster = rasterize(plot);
  const auto svg = to_svg(plot);
  EXPECT_EQ(count_of(svg, "class=\"shaft\""), static_cast<int>(plot.glyphs.size()));
  for (const auto& g : plot.glyphs) {
    for (Vec2 p : {g.tail, g.tip, g.head_left, g.head_right}) {
      const int x = static_cast<int>(std::floor(p.x)), y = static_cast<int>(std::floor(p.y));
      ASSERT_EQ(raster.rgb[(static_cast<std::size_t>(y) * raster.width + x) * 3], 0);
      ASSERT_NE(svg.find("\"" + format_real(p.x) + "\""), std::string::npos);
    }
  }
}

TEST(RenderArrows, PureFunctionOfInputs) {
  const auto f = rect_scene();
  ArrowPlotSpec spec;
  spec.overlay = extract_edge_currents(make_shape({RectShape{8, 12, 19, 21}})).edges;
  const auto a = render_arrows(f, spec), b = render_arrows(f, spec);
  EXPECT_EQ(a.svg, b.svg);
  EXPECT_EQ(save_pnm(a.raster), save_pnm(b.raster));
}

TEST(RenderArrows, MagnitudeScaledLengths) {
  ForceField f;
  f.samples.push_back(make_sample({0, 0}, {1, 0}));
  f.samples.push_back(make_sample({2, 0}, {4, 0}));
  ArrowPlotSpec spec;
  spec.width = spec.height = 3;
  spec.scale_by_magnitude = true;
  const auto plot = layout_arrows(f, spec);
  const double short_len = (plot.glyphs[0].tip - plot.glyphs[0].tail).norm();
  const double long_len = (plot.glyphs[1].tip - plot.glyphs[1].tail).norm();
  EXPECT_NEAR(long_len, 0.8 * 12, 1e-12);
  EXPECT_NEAR(short_len, 0.25 * long_len, 1e-12);
}

TEST(RenderArrows, RejectsBadSpecs) {
  ForceField f = rect_scene();
  ArrowPlotSpec spec;
  spec.cell_size = 3;
  EXPECT_THROW(layout_arrows(f, spec), std::invalid_argument);
  spec.cell_size = 12;
  spec.overlay = EdgeMap(16, 16);
  EXPECT_THROW(layout_arrows(f, spec), std::invalid_argument);
  ArrowPlotSpec small;
  small.width = small.height = 10;
  ForceField parsed = parse_field(serialize_field(f, FieldFormat::kCsv), FieldFormat::kCsv);
  EXPECT_THROW(layout_arrows(parsed, small), std::invalid_argument);
}
