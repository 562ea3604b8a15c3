#include "mdde/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "parallel.hpp"

namespace mdde {

void GridSpec::validate() const {
  require(std::isfinite(re_min) && std::isfinite(re_max) && re_min < re_max,
          "grid requires re_min < re_max");
  require(std::isfinite(im_min) && std::isfinite(im_max) && im_min < im_max,
          "grid requires im_min < im_max");
  require(width >= 1 && height >= 1, "grid dimensions must be at least 1");
}

// Cell centre, evaluated as centre + (2i + 1 - width) * span / (2 width).
// Mirrored rows of a grid symmetric about the real axis map to exact conjugates.
Complex GridSpec::pixel_to_c(int i, int j) const {
  const double re_mid = 0.5 * (re_min + re_max);
  const double im_mid = 0.5 * (im_min + im_max);
  const double re = re_mid + static_cast<double>(2 * i + 1 - width) * (re_max - re_min) /
                                 (2.0 * width);
  const double im = im_mid + static_cast<double>(height - 1 - 2 * j) * (im_max - im_min) /
                                 (2.0 * height);
  return {re, im};
}

int default_worker_count() {
  if (const char* env = std::getenv("MDDE_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1 && n <= 4096) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct PixelResult {
  std::uint8_t kind;
  double scalar;
  std::uint8_t flag;
};

PixelResult classify_pixel(Complex c, const ModeConfig& mode) {
  OrbitOutcome out;
  try {
    if (const auto* p = std::get_if<DiscreteParams>(&mode)) {
      out = iterate_orbit(c, *p);
    } else {
      out = classify_dde(c, std::get<DdeConfig>(mode));
    }
  } catch (const Error&) {
    return {static_cast<std::uint8_t>(OrbitKind::Undecided), 0.0, kFlagFailed};
  }

  double scalar = 0.0;
  switch (out.kind) {
    case OrbitKind::Escaped: scalar = out.escape_time.value_or(0.0); break;
    case OrbitKind::Converged: scalar = out.residual.value_or(0.0); break;
    case OrbitKind::Oscillating: scalar = out.amplitude.value_or(0.0); break;
    case OrbitKind::Undecided: scalar = std::abs(out.z_final); break;
  }
  return {static_cast<std::uint8_t>(out.kind), scalar,
          out.non_finite ? kFlagNonFinite : kFlagNone};
}

}  // namespace

ClassRaster render_grid(const GridSpec& grid, const ModeConfig& mode, int workers) {
  grid.validate();
  if (const auto* p = std::get_if<DiscreteParams>(&mode)) {
    require(p->max_iter >= 1, "max_iter must be at least 1");
    require(p->escape_radius >= 2.0, "discrete escape radius must be at least 2");
  }

  ClassRaster raster;
  raster.width = grid.width;
  raster.height = grid.height;
  const std::size_t n = static_cast<std::size_t>(grid.width) * grid.height;
  raster.classes.assign(n, 0);
  raster.scalars.assign(n, 0.0);
  raster.flags.assign(n, 0);

  const int n_workers = workers > 0 ? workers : default_worker_count();
  detail::parallel_for(static_cast<std::size_t>(grid.height), n_workers, [&](std::size_t row) {
    const int j = static_cast<int>(row);
    for (int i = 0; i < grid.width; ++i) {
      const PixelResult r = classify_pixel(grid.pixel_to_c(i, j), mode);
      const std::size_t k = raster.index(i, j);
      raster.classes[k] = r.kind;
      raster.scalars[k] = r.scalar;
      raster.flags[k] = r.flag;
    }
  });
  return raster;
}

Rgb Image::at(int i, int j) const {
  const std::size_t k = 3 * (static_cast<std::size_t>(j) * width + i);
  return {rgb[k], rgb[k + 1], rgb[k + 2]};
}

void Image::set(int i, int j, Rgb color) {
  const std::size_t k = 3 * (static_cast<std::size_t>(j) * width + i);
  rgb[k] = color.r;
  rgb[k + 1] = color.g;
  rgb[k + 2] = color.b;
}

Image colorize(const ClassRaster& raster, const PaletteSpec& palette) {
  require(raster.width >= 1 && raster.height >= 1 &&
              raster.classes.size() == static_cast<std::size_t>(raster.width) * raster.height &&
              raster.scalars.size() == raster.classes.size(),
          "raster is malformed");

  double ramp = palette.escape_max;
  if (!(ramp > 0.0)) {
    ramp = 0.0;
    for (std::size_t k = 0; k < raster.classes.size(); ++k)
      if (raster.classes[k] == static_cast<std::uint8_t>(OrbitKind::Escaped) &&
          std::isfinite(raster.scalars[k]))
        ramp = std::max(ramp, raster.scalars[k]);
  }

  Image img;
  img.width = raster.width;
  img.height = raster.height;
  img.rgb.resize(3 * raster.classes.size());
  for (int j = 0; j < raster.height; ++j) {
    for (int i = 0; i < raster.width; ++i) {
      const std::size_t k = raster.index(i, j);
      Rgb color;
      switch (static_cast<OrbitKind>(raster.classes[k])) {
        case OrbitKind::Escaped: {
          const double t =
              ramp > 0.0 ? std::clamp(raster.scalars[k] / ramp, 0.0, 1.0) : 1.0;
          const auto v = static_cast<std::uint8_t>(std::lround(255.0 * std::sqrt(t)));
          color = {v, v, v};
          break;
        }
        case OrbitKind::Converged: color = palette.converged; break;
        case OrbitKind::Oscillating: color = palette.oscillating; break;
        default: color = palette.undecided; break;
      }
      img.set(i, j, color);
    }
  }
  return img;
}

namespace {

// Liang-Barsky clip of the segment against [0, w] x [0, h].
bool clip_segment(double& x0, double& y0, double& x1, double& y1, double w, double h) {
  double t0 = 0.0;
  double t1 = 1.0;
  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {x0, w - x0, y0, h - y0};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return false;
      continue;
    }
    const double t = q[k] / p[k];
    if (p[k] < 0.0) {
      if (t > t1) return false;
      t0 = std::max(t0, t);
    } else {
      if (t < t0) return false;
      t1 = std::min(t1, t);
    }
  }
  const double ax = x0 + t0 * dx;
  const double ay = y0 + t0 * dy;
  x1 = x0 + t1 * dx;
  y1 = y0 + t1 * dy;
  x0 = ax;
  y0 = ay;
  return true;
}

void plot(Image& img, long long x, long long y, Rgb color) {
  if (x >= 0 && y >= 0 && x < img.width && y < img.height)
    img.set(static_cast<int>(x), static_cast<int>(y), color);
}

void draw_line(Image& img, long long x0, long long y0, long long x1, long long y1, Rgb color) {
  const long long dx = std::llabs(x1 - x0);
  const long long dy = -std::llabs(y1 - y0);
  const long long sx = x0 < x1 ? 1 : -1;
  const long long sy = y0 < y1 ? 1 : -1;
  long long err = dx + dy;
  for (;;) {
    plot(img, x0, y0, color);
    if (x0 == x1 && y0 == y1) break;
    const long long e2 = 2 * err;
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

}  // namespace

void overlay_curves(Image& image, const std::vector<std::vector<Complex>>& polylines,
                    const GridSpec& grid, Rgb color) {
  grid.validate();
  require(image.width == grid.width && image.height == grid.height,
          "image does not match the grid");
  const double w = grid.width;
  const double h = grid.height;
  const auto to_px = [&](Complex c) {
    return std::pair{(c.real() - grid.re_min) / (grid.re_max - grid.re_min) * w,
                     (grid.im_max - c.imag()) / (grid.im_max - grid.im_min) * h};
  };
  const auto cell = [](double v, double limit) {
    return static_cast<long long>(std::min(std::floor(v), limit - 1.0));
  };

  for (const auto& line : polylines) {
    if (line.size() == 1) {
      const auto [x, y] = to_px(line.front());
      if (x >= 0.0 && y >= 0.0 && x < w && y < h)
        plot(image, static_cast<long long>(x), static_cast<long long>(y), color);
      continue;
    }
    for (std::size_t k = 0; k + 1 < line.size(); ++k) {
      if (!is_finite(line[k]) || !is_finite(line[k + 1])) continue;
      auto [x0, y0] = to_px(line[k]);
      auto [x1, y1] = to_px(line[k + 1]);
      if (!clip_segment(x0, y0, x1, y1, w, h)) continue;
      draw_line(image, cell(x0, w), cell(y0, h), cell(x1, w), cell(y1, h), color);
    }
  }
}

ClassTally count_classes(const ClassRaster& raster, const PixelRect& rect) {
  require(rect.x >= 0 && rect.y >= 0 && rect.width >= 0 && rect.height >= 0 &&
              rect.x + rect.width <= raster.width && rect.y + rect.height <= raster.height,
          "rectangle exceeds the raster");
  ClassTally tally{};
  for (int j = rect.y; j < rect.y + rect.height; ++j)
    for (int i = rect.x; i < rect.x + rect.width; ++i)
      ++tally[std::min<std::size_t>(raster.classes[raster.index(i, j)], 3)];
  return tally;
}

ClassTally count_classes(const ClassRaster& raster) {
  return count_classes(raster, PixelRect{0, 0, raster.width, raster.height});
}

}  // namespace mdde
