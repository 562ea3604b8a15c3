#include "mdde/mdde.h"

#include <cmath>
#include <limits>
#include <new>
#include <string>

#include "mdde/bifurcation.hpp"
#include "mdde/cycles.hpp"
#include "mdde/dynamics.hpp"
#include "mdde/io.hpp"
#include "mdde/stability.hpp"
#include "mdde/sweep.hpp"

struct mdde_table {
  mdde::Table table;
};

struct mdde_raster {
  mdde::ClassRaster raster;
};

struct mdde_image {
  mdde::Image image;
};

namespace {

thread_local std::string g_last_error;

constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

mdde_status to_status(mdde::ErrorCode code) {
  using mdde::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return MDDE_ERR_INVALID_ARGUMENT;
    case ErrorCode::NoConvergence: return MDDE_ERR_NO_CONVERGENCE;
    case ErrorCode::DegenerateCycle: return MDDE_ERR_DEGENERATE_CYCLE;
    case ErrorCode::ContinuationStall: return MDDE_ERR_CONTINUATION_STALL;
    case ErrorCode::InconclusiveWinding: return MDDE_ERR_INCONCLUSIVE_WINDING;
    case ErrorCode::DivisionByZeroRay: return MDDE_ERR_DIVISION_BY_ZERO_RAY;
    case ErrorCode::TooFewPeaks: return MDDE_ERR_TOO_FEW_PEAKS;
    case ErrorCode::Io: return MDDE_ERR_IO;
  }
  return MDDE_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes and the last-error text.
template <typename Fn>
mdde_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MDDE_OK;
  } catch (const mdde::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return MDDE_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) throw mdde::Error(mdde::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

mdde::Complex from_c(mdde_complex z) { return {z.re, z.im}; }
mdde_complex to_c(mdde::Complex z) { return {z.real(), z.imag()}; }

mdde::DdeConfig from_c(const mdde_dde_config& c) {
  return mdde::DdeConfig(c.tau0, c.dt, c.tau_end, c.escape_radius, c.conv_tol, c.window,
                         c.transient_frac);
}

mdde_dde_config to_c(const mdde::DdeConfig& c) {
  return {c.tau0(), c.dt(), c.tau_end(), c.escape_radius(), c.conv_tol(), c.window(),
          c.transient_frac()};
}

mdde::DiscreteParams from_c(const mdde_discrete_params& p) {
  return {p.max_iter, p.escape_radius, p.conv_tol};
}

mdde::ModeConfig from_c(const mdde_mode_config& m) {
  if (m.mode == MDDE_MODE_DISCRETE) return from_c(m.discrete);
  if (m.mode == MDDE_MODE_DDE) return from_c(m.dde);
  throw mdde::Error(mdde::ErrorCode::InvalidArgument, "unknown mode");
}

mdde::GridSpec from_c(const mdde_grid& g) {
  mdde::GridSpec s{g.re_min, g.re_max, g.im_min, g.im_max, g.width, g.height};
  s.validate();
  return s;
}

mdde_outcome to_c(const mdde::OrbitOutcome& o) {
  mdde_outcome out;
  out.kind = static_cast<mdde_orbit_kind>(o.kind);
  out.z_final = to_c(o.z_final);
  out.escape_time = o.escape_time.value_or(kAbsent);
  out.residual = o.residual.value_or(kAbsent);
  out.amplitude = o.amplitude.value_or(kAbsent);
  out.non_finite = o.non_finite ? 1 : 0;
  return out;
}

mdde::Rgb from_c(mdde_rgb c) { return {c.r, c.g, c.b}; }
mdde_rgb to_c(mdde::Rgb c) { return {c.r, c.g, c.b}; }

mdde::Table trajectory_table(const mdde::Trajectory& traj) {
  mdde::Table t;
  t.header = {"tau", "z_re", "z_im", "abs_z"};
  t.rows.reserve(traj.size());
  for (const auto& s : traj) t.rows.push_back({s.tau, s.z.real(), s.z.imag(), std::abs(s.z)});
  return t;
}

std::size_t column_index(const mdde::Table& t, const std::string& name) {
  for (std::size_t k = 0; k < t.header.size(); ++k)
    if (t.header[k] == name) return k;
  throw mdde::Error(mdde::ErrorCode::InvalidArgument, "table has no column '" + name + "'");
}

template <typename T>
T* emit(T value) {
  return new T(std::move(value));
}

}  // namespace

extern "C" {

const char* mdde_version(void) { return "1.0.0"; }

const char* mdde_last_error(void) { return g_last_error.c_str(); }

const char* mdde_status_string(mdde_status status) {
  switch (status) {
    case MDDE_OK: return "ok";
    case MDDE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MDDE_ERR_NO_CONVERGENCE: return "no convergence";
    case MDDE_ERR_DEGENERATE_CYCLE: return "degenerate cycle";
    case MDDE_ERR_CONTINUATION_STALL: return "continuation stall";
    case MDDE_ERR_INCONCLUSIVE_WINDING: return "inconclusive winding";
    case MDDE_ERR_DIVISION_BY_ZERO_RAY: return "division by zero ray";
    case MDDE_ERR_TOO_FEW_PEAKS: return "too few peaks";
    case MDDE_ERR_IO: return "i/o failure";
    case MDDE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int mdde_default_workers(void) { return mdde::default_worker_count(); }

void mdde_dde_config_defaults(double tau0, double tau_end, mdde_dde_config* out) {
  if (!out) return;
  *out = {tau0, tau0 / 200.0, tau_end, 10.0, 1e-6, 10.0 * tau0, 0.5};
}

mdde_status mdde_dde_config_resolve(const mdde_dde_config* in, mdde_dde_config* out) {
  return guarded([&] {
    need(in, "config");
    need(out, "out");
    *out = to_c(from_c(*in));
  });
}

void mdde_discrete_params_defaults(mdde_discrete_params* out) {
  if (!out) return;
  const mdde::DiscreteParams p;
  *out = {p.max_iter, p.escape_radius, p.conv_tol};
}

void mdde_palette_defaults(mdde_palette* out) {
  if (!out) return;
  const mdde::PaletteSpec p;
  *out = {p.escape_max, to_c(p.converged), to_c(p.oscillating), to_c(p.undecided)};
}

mdde_complex mdde_map_step(mdde_complex z, mdde_complex c) {
  return to_c(mdde::map_step(from_c(z), from_c(c)));
}

mdde_status mdde_iterate_orbit(mdde_complex c, const mdde_discrete_params* params,
                               mdde_outcome* out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    *out = to_c(mdde::iterate_orbit(from_c(c), from_c(*params)));
  });
}

mdde_status mdde_integrate_dde(mdde_complex c, const mdde_dde_config* config,
                               int sample_stride, mdde_table** trajectory, mdde_outcome* out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    const auto result = mdde::integrate_dde(from_c(c), from_c(*config), sample_stride);
    *out = to_c(result.outcome);
    if (trajectory) *trajectory = emit(mdde_table{trajectory_table(result.trajectory)});
  });
}

mdde_complex mdde_cardioid_point(double phi) { return to_c(mdde::cardioid_point(phi)); }

mdde_complex mdde_period2_point(double phi) { return to_c(mdde::period2_point(phi)); }

mdde_status mdde_find_cycle(mdde_complex c, int n, mdde_complex seed, mdde_cycle* out) {
  return guarded([&] {
    need(out, "out");
    const auto cd = mdde::find_cycle(from_c(c), n, from_c(seed));
    const auto check = mdde::cycle_multiplier_invariants(cd);
    mdde_cycle r{};
    r.period = cd.period;
    for (std::size_t k = 0; k < cd.points.size(); ++k) r.points[k] = to_c(cd.points[k]);
    r.multiplier = to_c(cd.multiplier);
    r.c = to_c(cd.c);
    r.modulus = check.modulus;
    r.on_boundary = check.on_boundary ? 1 : 0;
    *out = r;
  });
}

mdde_status mdde_boundary_curve(mdde_curve_kind kind, int samples, double tau0,
                                mdde_table** out) {
  if (!out) return guarded([] { need(nullptr, "out"); });
  *out = nullptr;
  mdde::Table t;
  const mdde_status st = guarded([&] {
    switch (kind) {
      case MDDE_CURVE_CARDIOID:
      case MDDE_CURVE_PERIOD2: {
        const int n = kind == MDDE_CURVE_CARDIOID ? 1 : 2;
        const auto pts = mdde::trace_multiplier_boundary(n, samples);
        t.header = {"phi", "c_re", "c_im"};
        for (int k = 0; k < samples; ++k)
          t.rows.push_back({mdde::kTwoPi * k / samples, pts[k].real(), pts[k].imag()});
        break;
      }
      case MDDE_CURVE_PERIOD3: {
        t.header = {"theta", "c_re", "c_im"};
        try {
          const auto pts = mdde::trace_multiplier_boundary(3, samples);
          for (int k = 0; k < samples; ++k)
            t.rows.push_back({mdde::kTwoPi * k / samples, pts[k].real(), pts[k].imag()});
        } catch (const mdde::ContinuationStall& stall) {
          const auto& pts = stall.partial();
          for (std::size_t k = 0; k < pts.size(); ++k)
            t.rows.push_back({mdde::kTwoPi * static_cast<double>(k) / samples, pts[k].real(),
                              pts[k].imag()});
          throw;
        }
        break;
      }
      case MDDE_CURVE_HOPF: {
        t.header = {"phi", "omega", "c_re", "c_im", "marginal_modulus"};
        for (const auto& s : mdde::hopf_boundary_curve(tau0, samples))
          t.rows.push_back({s.phi, s.omega, s.c_h.real(), s.c_h.imag(), s.marginal_modulus});
        break;
      }
      default:
        throw mdde::Error(mdde::ErrorCode::InvalidArgument, "unknown curve kind");
    }
  });
  if (st == MDDE_OK || st == MDDE_ERR_CONTINUATION_STALL) {
    const std::string message = g_last_error;
    guarded([&] { *out = emit(mdde_table{std::move(t)}); });
    g_last_error = message;
  }
  return st;
}

mdde_status mdde_solve_omega(double phi_eff, double tau0, double* omega) {
  return guarded([&] {
    need(omega, "omega");
    *omega = mdde::solve_omega(phi_eff, tau0);
  });
}

mdde_status mdde_hopf_boundary_point(double phi, double tau0, mdde_hopf_sample* out) {
  return guarded([&] {
    need(out, "out");
    const auto s = mdde::hopf_boundary_point(phi, tau0);
    *out = {s.phi, s.omega, to_c(s.c_h), s.marginal_modulus};
  });
}

mdde_status mdde_stationary_points(mdde_complex c, mdde_complex out[2]) {
  return guarded([&] {
    need(out, "out");
    const auto [a, b] = mdde::stationary_points(from_c(c));
    out[0] = to_c(a);
    out[1] = to_c(b);
  });
}

mdde_status mdde_is_stable(mdde_complex z_s, double tau0, mdde_verdict* out) {
  return guarded([&] {
    need(out, "out");
    const auto v = mdde::is_stable(from_c(z_s), tau0);
    *out = {v.stable ? 1 : 0, v.binding_threshold, v.phi_used, v.omega_used};
  });
}

mdde_status mdde_nyquist_oracle(mdde_complex z_s, double tau0, double omega_max,
                                int n_points, int* stable) {
  return guarded([&] {
    need(stable, "stable");
    *stable = mdde::nyquist_oracle(from_c(z_s), tau0, omega_max, n_points) ? 1 : 0;
  });
}

mdde_status mdde_predicted_period(double omega, double* period) {
  return guarded([&] {
    need(period, "period");
    *period = mdde::predicted_period(omega);
  });
}

mdde_status mdde_ray_slope(double phi, double tau0, double* slope) {
  return guarded([&] {
    need(slope, "slope");
    *slope = mdde::ray_slope(phi, tau0);
  });
}

mdde_status mdde_render(const mdde_grid* grid, const mdde_mode_config* mode, int workers,
                        mdde_raster** out) {
  return guarded([&] {
    need(grid, "grid");
    need(mode, "mode");
    need(out, "out");
    *out = nullptr;
    *out = emit(mdde_raster{mdde::render_grid(from_c(*grid), from_c(*mode), workers)});
  });
}

void mdde_raster_free(mdde_raster* raster) { delete raster; }

int mdde_raster_width(const mdde_raster* raster) { return raster ? raster->raster.width : 0; }

int mdde_raster_height(const mdde_raster* raster) { return raster ? raster->raster.height : 0; }

int mdde_raster_class(const mdde_raster* raster, int i, int j) {
  if (!raster || i < 0 || j < 0 || i >= raster->raster.width || j >= raster->raster.height)
    return -1;
  return raster->raster.classes[raster->raster.index(i, j)];
}

double mdde_raster_scalar(const mdde_raster* raster, int i, int j) {
  if (!raster || i < 0 || j < 0 || i >= raster->raster.width || j >= raster->raster.height)
    return kAbsent;
  return raster->raster.scalars[raster->raster.index(i, j)];
}

const uint8_t* mdde_raster_classes(const mdde_raster* raster) {
  return raster ? raster->raster.classes.data() : nullptr;
}

mdde_status mdde_count_classes(const mdde_raster* raster, int x, int y, int width, int height,
                               size_t counts[4]) {
  return guarded([&] {
    need(raster, "raster");
    need(counts, "counts");
    const auto tally = mdde::count_classes(raster->raster, {x, y, width, height});
    for (int k = 0; k < 4; ++k) counts[k] = tally[k];
  });
}

mdde_status mdde_raster_table(const mdde_raster* raster, const mdde_grid* grid,
                              mdde_table** out) {
  return guarded([&] {
    need(raster, "raster");
    need(grid, "grid");
    need(out, "out");
    *out = emit(mdde_table{mdde::raster_table(raster->raster, from_c(*grid))});
  });
}

mdde_status mdde_colorize(const mdde_raster* raster, const mdde_palette* palette,
                          mdde_image** out) {
  return guarded([&] {
    need(raster, "raster");
    need(out, "out");
    mdde::PaletteSpec spec;
    if (palette) {
      spec.escape_max = palette->escape_max;
      spec.converged = from_c(palette->converged);
      spec.oscillating = from_c(palette->oscillating);
      spec.undecided = from_c(palette->undecided);
    }
    *out = emit(mdde_image{mdde::colorize(raster->raster, spec)});
  });
}

void mdde_image_free(mdde_image* image) { delete image; }

int mdde_image_width(const mdde_image* image) { return image ? image->image.width : 0; }

int mdde_image_height(const mdde_image* image) { return image ? image->image.height : 0; }

const uint8_t* mdde_image_pixels(const mdde_image* image) {
  return image ? image->image.rgb.data() : nullptr;
}

mdde_status mdde_overlay_curve(mdde_image* image, const mdde_grid* grid,
                               const mdde_complex* points, size_t n_points, mdde_rgb color) {
  return guarded([&] {
    need(image, "image");
    need(grid, "grid");
    if (n_points) need(points, "points");
    std::vector<mdde::Complex> line;
    line.reserve(n_points);
    for (size_t k = 0; k < n_points; ++k) line.push_back(from_c(points[k]));
    std::vector<std::vector<mdde::Complex>> lines;
    if (!line.empty()) lines.push_back(std::move(line));
    mdde::overlay_curves(image->image, lines, from_c(*grid), from_c(color));
  });
}

mdde_status mdde_write_ppm(const mdde_image* image, const char* path) {
  return guarded([&] {
    need(image, "image");
    need(path, "path");
    mdde::write_ppm(image->image, path);
  });
}

mdde_status mdde_time_series(mdde_complex c, const mdde_mode_config* mode, int stride,
                             mdde_table** out) {
  return guarded([&] {
    need(mode, "mode");
    need(out, "out");
    const auto ts = mdde::time_series(from_c(c), from_c(*mode), stride);
    *out = emit(mdde_table{trajectory_table(ts.samples)});
  });
}

mdde_status mdde_measure_period(const mdde_table* series, double transient_cut,
                                mdde_period* out) {
  return guarded([&] {
    need(series, "series");
    need(out, "out");
    const auto& t = series->table;
    const std::size_t ct = column_index(t, "tau");
    const std::size_t cre = column_index(t, "z_re");
    const std::size_t cim = column_index(t, "z_im");
    mdde::TimeSeries ts;
    ts.samples.reserve(t.rows.size());
    for (const auto& row : t.rows) ts.samples.push_back({row[ct], {row[cre], row[cim]}});
    const auto est = mdde::measure_period(ts, transient_cut);
    *out = {est.period, est.spread, est.n_peaks};
  });
}

mdde_status mdde_feigenbaum_scan(mdde_complex c0, mdde_complex dir, double s_min, double s_max,
                                 int n_params, const mdde_mode_config* mode, int workers,
                                 double branch_tol, int* branches, mdde_table** out) {
  return guarded([&] {
    need(mode, "mode");
    need(out, "out");
    mdde::ScanLine line{from_c(c0), from_c(dir), s_min, s_max, n_params};
    const auto points = mdde::feigenbaum_scan(line, from_c(*mode), workers);
    mdde::Table t;
    t.header = {"s", "c_re", "c_im", "value"};
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto& p = points[k];
      for (const double v : p.values) t.rows.push_back({p.s, p.c.real(), p.c.imag(), v});
      if (branches) branches[k] = mdde::count_branches(p.values, branch_tol);
    }
    *out = emit(mdde_table{std::move(t)});
  });
}

mdde_status mdde_ray_frequency_check(double phi, double tau0, const double* radii,
                                     size_t n_radii, const mdde_dde_config* config,
                                     int workers, mdde_table** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    if (n_radii) need(radii, "radii");
    const std::vector<double> r(radii, radii + n_radii);
    const auto probes = mdde::ray_frequency_check(phi, tau0, r, from_c(*config), workers);
    mdde::Table t;
    t.header = {"radius", "c_re", "c_im", "period", "spread", "n_peaks", "status"};
    for (const auto& p : probes) {
      const double status = p.error ? static_cast<double>(to_status(*p.error)) : 0.0;
      t.rows.push_back({p.radius, p.c.real(), p.c.imag(),
                        p.estimate ? p.estimate->period : kAbsent,
                        p.estimate ? p.estimate->spread : kAbsent,
                        p.estimate ? static_cast<double>(p.estimate->n_peaks) : 0.0, status});
    }
    *out = emit(mdde_table{std::move(t)});
  });
}

void mdde_table_free(mdde_table* table) { delete table; }

size_t mdde_table_rows(const mdde_table* table) { return table ? table->table.rows.size() : 0; }

size_t mdde_table_cols(const mdde_table* table) {
  return table ? table->table.header.size() : 0;
}

const char* mdde_table_column(const mdde_table* table, size_t col) {
  if (!table || col >= table->table.header.size()) return nullptr;
  return table->table.header[col].c_str();
}

double mdde_table_get(const mdde_table* table, size_t row, size_t col) {
  if (!table || row >= table->table.rows.size() || col >= table->table.header.size())
    return kAbsent;
  return table->table.rows[row][col];
}

mdde_status mdde_write_csv(const mdde_table* table, const char* path) {
  return guarded([&] {
    need(table, "table");
    need(path, "path");
    mdde::write_csv(table->table, path);
  });
}

}  // extern "C"
