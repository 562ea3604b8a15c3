#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "mdde/dynamics.hpp"
#include "mdde/types.hpp"

namespace mdde {

/// Discrete recurrence or delay equation, selected by the alternative held.
using ModeConfig = std::variant<DiscreteParams, DdeConfig>;

/// Pixel (i, j) samples the centre of its cell; j = 0 is the top row (im_max).
struct GridSpec {
  double re_min = -2.0;
  double re_max = 0.75;
  double im_min = -1.25;
  double im_max = 1.25;
  int width = 600;
  int height = 600;

  void validate() const;
  Complex pixel_to_c(int i, int j) const;
};

enum PixelFlag : std::uint8_t {
  kFlagNone = 0,
  kFlagNonFinite = 1,  // escape detected through a NaN/Inf state
  kFlagFailed = 2,     // classification threw; pixel marked Undecided
};

/// Per-pixel class code (OrbitKind value) and scalar: escape time for
/// Escaped, residual for Converged, amplitude for Oscillating, |z_final| else.
struct ClassRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> classes;
  std::vector<double> scalars;
  std::vector<std::uint8_t> flags;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(i);
  }
  OrbitKind kind_at(int i, int j) const { return static_cast<OrbitKind>(classes[index(i, j)]); }
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major triples, top row first

  Rgb at(int i, int j) const;
  void set(int i, int j, Rgb color);
};

struct PaletteSpec {
  double escape_max = 0.0;  // scalar mapped to white; <= 0 picks the raster maximum
  Rgb converged{0, 0, 0};
  Rgb oscillating{128, 128, 128};
  Rgb undecided{64, 64, 64};
};

struct PixelRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

using ClassTally = std::array<std::size_t, 4>;

/// Number of workers from MDDE_WORKERS, else hardware concurrency.
int default_worker_count();

/// Classifies every pixel independently. `workers` <= 0 means default_worker_count().
ClassRaster render_grid(const GridSpec& grid, const ModeConfig& mode, int workers = 0);

Image colorize(const ClassRaster& raster, const PaletteSpec& palette = {});

/// Draws each polyline with integer line segments, clipped to the grid.
void overlay_curves(Image& image, const std::vector<std::vector<Complex>>& polylines,
                    const GridSpec& grid, Rgb color);

ClassTally count_classes(const ClassRaster& raster, const PixelRect& rect);
ClassTally count_classes(const ClassRaster& raster);

}  // namespace mdde
