#include <cmath>
#include <cstring>

#include "doctest.h"
#include "mdde/cycles.hpp"
#include "mdde/sweep.hpp"

using namespace mdde;

namespace {

GridSpec centred(Complex c, int w = 1, int h = 1, double half = 0.5) {
  return {c.real() - half, c.real() + half, c.imag() - half, c.imag() + half, w, h};
}

ClassRaster uniform(int w, int h, OrbitKind kind, double scalar = 0.0) {
  ClassRaster r;
  r.width = w;
  r.height = h;
  r.classes.assign(static_cast<std::size_t>(w) * h, static_cast<std::uint8_t>(kind));
  r.scalars.assign(r.classes.size(), scalar);
  r.flags.assign(r.classes.size(), kFlagNone);
  return r;
}

}  // namespace

TEST_CASE("pixel centres follow the documented mapping") {
  const GridSpec g{-2.0, 0.75, -1.25, 1.25, 7, 5};
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) {
      const Complex c = g.pixel_to_c(i, j);
      CHECK(c.real() == doctest::Approx(-2.0 + (i + 0.5) * 2.75 / 7).epsilon(1e-15));
      CHECK(c.imag() == doctest::Approx(1.25 - (j + 0.5) * 2.5 / 5).epsilon(1e-15));
    }
  CHECK(g.pixel_to_c(0, 0).imag() > 0.0);
  CHECK(g.pixel_to_c(3, 2).imag() == 0.0);

  const GridSpec sym{-1.0, 1.0, -0.8, 0.8, 4, 6};
  for (int j = 0; j < sym.height; ++j)
    CHECK(sym.pixel_to_c(1, j) == std::conj(sym.pixel_to_c(1, sym.height - 1 - j)));

  CHECK_THROWS_AS((GridSpec{1.0, 0.0, -1.0, 1.0, 4, 4}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, -1.0, 1.0, 0, 4}.validate()), Error);
}

TEST_CASE("single-pixel renders") {
  const auto origin = render_grid(centred({0, 0}), DiscreteParams{});
  CHECK(origin.kind_at(0, 0) == OrbitKind::Converged);

  const auto one = render_grid(centred({1, 0}), DiscreteParams{});
  CHECK(one.kind_at(0, 0) == OrbitKind::Escaped);
  CHECK(one.scalars[0] == 3.0);

  const auto relaxed = render_grid(centred({0.1, 0}), DdeConfig::with_defaults(10.0, 300.0));
  CHECK(relaxed.kind_at(0, 0) == OrbitKind::Converged);
  CHECK(relaxed.scalars[0] < 1e-5);
}

TEST_CASE("render is independent of the worker count") {
  const GridSpec g{-1.4, -0.3, -0.7, 0.7, 24, 20};
  const DdeConfig cfg = DdeConfig::with_defaults(10.0, 150.0).with_window(40.0);
  const auto one = render_grid(g, cfg, 1);
  const auto many = render_grid(g, cfg, 5);
  CHECK(one.classes == many.classes);
  CHECK(one.flags == many.flags);
  bool same_bits = one.scalars.size() == many.scalars.size();
  for (std::size_t k = 0; same_bits && k < one.scalars.size(); ++k)
    same_bits = std::memcmp(&one.scalars[k], &many.scalars[k], sizeof(double)) == 0;
  CHECK(same_bits);

  const auto d1 = render_grid(GridSpec{-2.0, 0.75, -1.25, 1.25, 50, 40}, DiscreteParams{}, 1);
  const auto d3 = render_grid(GridSpec{-2.0, 0.75, -1.25, 1.25, 50, 40}, DiscreteParams{}, 3);
  CHECK(d1.classes == d3.classes);
  CHECK(d1.scalars == d3.scalars);
}

TEST_CASE("real-axis symmetric grids give mirror-symmetric rasters") {
  const GridSpec g{-1.3, 0.3, -0.8, 0.8, 20, 21};
  const auto raster = render_grid(g, DdeConfig::with_defaults(10.0, 200.0), 2);
  bool mirrored = true;
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) {
      const std::size_t a = raster.index(i, j);
      const std::size_t b = raster.index(i, g.height - 1 - j);
      mirrored = mirrored && raster.classes[a] == raster.classes[b] &&
                 raster.scalars[a] == raster.scalars[b];
    }
  CHECK(mirrored);
}

TEST_CASE("colorize default palette") {
  const auto black = colorize(uniform(2, 2, OrbitKind::Converged));
  CHECK(black.rgb == std::vector<std::uint8_t>(12, 0));

  const auto white = colorize(uniform(1, 1, OrbitKind::Escaped, 17.0));
  CHECK(white.at(0, 0) == Rgb{255, 255, 255});

  PaletteSpec fixed;
  fixed.escape_max = 100.0;
  const auto quarter = colorize(uniform(1, 1, OrbitKind::Escaped, 25.0), fixed);
  CHECK(quarter.at(0, 0) == Rgb{128, 128, 128});

  ClassRaster mixed = uniform(4, 1, OrbitKind::Escaped, 5.0);
  mixed.classes = {0, 1, 2, 3};
  const auto img = colorize(mixed);
  CHECK(img.at(0, 0) == Rgb{255, 255, 255});
  CHECK(img.at(1, 0) == Rgb{0, 0, 0});
  CHECK(img.at(2, 0) == Rgb{128, 128, 128});
  CHECK(img.at(3, 0) == Rgb{64, 64, 64});
  CHECK(colorize(mixed).rgb == img.rgb);
}

TEST_CASE("overlay clipping and degenerate inputs") {
  const GridSpec g{-1.0, 1.0, -1.0, 1.0, 10, 10};
  const Image blank = colorize(uniform(10, 10, OrbitKind::Converged));
  Image img = blank;
  overlay_curves(img, {}, g, {255, 0, 0});
  CHECK(img.rgb == blank.rgb);
  overlay_curves(img, {{Complex(5.0, 5.0)}}, g, {255, 0, 0});
  CHECK(img.rgb == blank.rgb);
  overlay_curves(img, {{Complex(-5.0, 3.0), Complex(5.0, 3.0)}}, g, {255, 0, 0});
  CHECK(img.rgb == blank.rgb);

  overlay_curves(img, {{Complex(0.05, 0.05)}}, g, {255, 0, 0});
  CHECK(img.at(5, 4) == Rgb{255, 0, 0});

  Image diag = blank;
  overlay_curves(diag, {{Complex(-3.0, 3.0), Complex(3.0, -3.0)}}, g, {0, 255, 0});
  for (int k = 0; k < 10; ++k) CHECK(diag.at(k, k) == Rgb{0, 255, 0});
}

TEST_CASE("cardioid overlay hugs the rendered main region") {
  const GridSpec g{-2.0, 0.75, -1.25, 1.25, 220, 200};
  const auto raster = render_grid(g, DiscreteParams{});
  Image img = colorize(raster);
  std::vector<Complex> curve;
  for (int k = 0; k <= 2048; ++k) curve.push_back(cardioid_point(kTwoPi * k / 2048));
  const Rgb marker{255, 0, 0};
  overlay_curves(img, {curve}, g, marker);

  auto near_transition = [&](int i, int j) {
    bool inside = false;
    bool outside = false;
    for (int dj = -2; dj <= 2; ++dj)
      for (int di = -2; di <= 2; ++di) {
        const int x = i + di;
        const int y = j + dj;
        if (x < 0 || y < 0 || x >= g.width || y >= g.height) continue;
        (raster.kind_at(x, y) == OrbitKind::Converged ? inside : outside) = true;
      }
    return inside && outside;
  };
  int drawn = 0;
  int hugging = 0;
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i)
      if (img.at(i, j) == marker) {
        ++drawn;
        hugging += near_transition(i, j);
      }
  REQUIRE(drawn > 100);
  CHECK(hugging >= 0.95 * drawn);
}

TEST_CASE("count_classes") {
  const auto conv = uniform(2, 2, OrbitKind::Converged);
  CHECK(count_classes(conv) == ClassTally{0, 4, 0, 0});
  CHECK(count_classes(conv, {1, 1, 0, 0}) == ClassTally{0, 0, 0, 0});
  CHECK_THROWS_AS(count_classes(conv, {1, 1, 2, 2}), Error);

  const auto raster = render_grid(GridSpec{-2.0, 0.75, -1.25, 1.25, 30, 20}, DiscreteParams{});
  const auto left = count_classes(raster, {0, 0, 12, 20});
  const auto right = count_classes(raster, {12, 0, 18, 20});
  const auto all = count_classes(raster);
  for (int k = 0; k < 4; ++k) CHECK(left[k] + right[k] == all[k]);
}

TEST_CASE("worker count default") {
  CHECK(default_worker_count() >= 1);
}
