#include <gtest/gtest.h>

#include <random>

#include "edgeforce/gradient_field.hpp"

using namespace edgeforce;

namespace {

GrayImage random_image(std::mt19937& rng, int max_value) {
  std::uniform_int_distribution<int> side(3, 24), value(0, max_value);
  const int w = side(rng), h = side(rng);
  GrayImage g(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) g.at(x, y) = static_cast<std::uint8_t>(value(rng));
  return g;
}

// Reference: explicit kernel tables, correlation form.
Vec2 reference_sobel(const GrayImage& g, int x, int y) {
  static constexpr int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static constexpr int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  int sx = 0, sy = 0;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      sx += kx[j][i] * g.at(x + i - 1, y + j - 1);
      sy += ky[j][i] * g.at(x + i - 1, y + j - 1);
    }
  return {double(sx), double(sy)};
}

void expect_zero_border(const GradientField& f) {
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x)
      if (x == 0 || y == 0 || x == f.width - 1 || y == f.height - 1)
        ASSERT_TRUE(f.at(x, y).is_zero()) << x << "," << y;
}

}  // namespace

TEST(Sobel, UniformImageIsZero) {
  auto f = sobel(GrayImage(7, 5, 133));
  for (const auto& v : f.vectors) EXPECT_TRUE(v.is_zero());
  EXPECT_EQ(f.max_magnitude(), 0.0);
}

TEST(Sobel, VerticalStepPointsRight) {
  auto f = sobel(GrayImage(3, 3, {0, 0, 255, 0, 0, 255, 0, 0, 255}));
  EXPECT_EQ(f.at(1, 1), (Vec2{1020, 0}));
  expect_zero_border(f);
}

TEST(Sobel, HorizontalStepPointsDown) {
  auto f = sobel(GrayImage(3, 3, {0, 0, 0, 0, 0, 0, 255, 255, 255}));
  EXPECT_EQ(f.at(1, 1), (Vec2{0, 1020}));
  EXPECT_EQ(f.magnitude(1, 1), 1020.0);
}

TEST(SobelProperty, MatchesKernelTablesAndZeroBorder) {
  std::mt19937 rng(7);
  for (int n = 0; n < 100; ++n) {
    auto g = random_image(rng, 255);
    auto f = sobel(g);
    ASSERT_EQ(f.width, g.width());
    ASSERT_EQ(f.height, g.height());
    expect_zero_border(f);
    for (int y = 1; y < g.height() - 1; ++y)
      for (int x = 1; x < g.width() - 1; ++x)
        ASSERT_EQ(f.at(x, y), reference_sobel(g, x, y));
  }
}

TEST(SobelProperty, TransposeSwapsComponents) {
  std::mt19937 rng(11);
  for (int n = 0; n < 100; ++n) {
    auto g = random_image(rng, 255);
    GrayImage t(g.height(), g.width());
    for (int y = 0; y < g.height(); ++y)
      for (int x = 0; x < g.width(); ++x) t.at(y, x) = g.at(x, y);
    auto fg = sobel(g), ft = sobel(t);
    for (int y = 0; y < g.height(); ++y)
      for (int x = 0; x < g.width(); ++x) {
        ASSERT_EQ(ft.at(y, x).x, fg.at(x, y).y);
        ASSERT_EQ(ft.at(y, x).y, fg.at(x, y).x);
      }
  }
}

TEST(SobelProperty, LinearInIntegerScale) {
  std::mt19937 rng(13);
  for (int n = 0; n < 100; ++n) {
    const int a = 1 + n % 3;
    auto g = random_image(rng, 255 / a);
    GrayImage scaled = g;
    for (int y = 0; y < g.height(); ++y)
      for (int x = 0; x < g.width(); ++x)
        scaled.at(x, y) = static_cast<std::uint8_t>(a * g.at(x, y));
    auto f1 = sobel(g), fa = sobel(scaled);
    for (std::size_t i = 0; i < f1.vectors.size(); ++i)
      ASSERT_EQ(fa.vectors[i], f1.vectors[i] * a);
  }
}

TEST(MagnitudeImage, PeakMapsTo255) {
  auto img = magnitude_image(sobel(GrayImage(3, 3, {0, 0, 255, 0, 0, 255, 0, 0, 255})));
  EXPECT_EQ(img.at(1, 1), 255);
  EXPECT_EQ(img.at(0, 0), 0);
  auto flat = magnitude_image(sobel(GrayImage(4, 4, 9)));
  for (auto p : flat.pixels()) EXPECT_EQ(p, 0);
}
