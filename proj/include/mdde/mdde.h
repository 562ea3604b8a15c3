/*
 * mdde.h -- C interface to the Mandelbrot recurrence / delay-equation library.
 *
 * Every fallible call returns an mdde_status. On failure the thread-local
 * message from mdde_last_error() describes the cause. Objects behind opaque
 * handles are released with the matching *_free function; passing NULL to a
 * free function is a no-op.
 */
#ifndef MDDE_H
#define MDDE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define MDDE_API __declspec(dllexport)
#else
#  define MDDE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  MDDE_OK = 0,
  MDDE_ERR_INVALID_ARGUMENT = 1,
  MDDE_ERR_NO_CONVERGENCE = 2,
  MDDE_ERR_DEGENERATE_CYCLE = 3,
  MDDE_ERR_CONTINUATION_STALL = 4,
  MDDE_ERR_INCONCLUSIVE_WINDING = 5,
  MDDE_ERR_DIVISION_BY_ZERO_RAY = 6,
  MDDE_ERR_TOO_FEW_PEAKS = 7,
  MDDE_ERR_IO = 8,
  MDDE_ERR_INTERNAL = 99
} mdde_status;

typedef enum {
  MDDE_ESCAPED = 0,
  MDDE_CONVERGED = 1,
  MDDE_OSCILLATING = 2,
  MDDE_UNDECIDED = 3
} mdde_orbit_kind;

typedef enum { MDDE_MODE_DISCRETE = 0, MDDE_MODE_DDE = 1 } mdde_mode;

typedef enum {
  MDDE_CURVE_CARDIOID = 0,
  MDDE_CURVE_PERIOD2 = 1,
  MDDE_CURVE_PERIOD3 = 2,
  MDDE_CURVE_HOPF = 3
} mdde_curve_kind;

typedef struct {
  double re;
  double im;
} mdde_complex;

typedef struct {
  double tau0;
  double dt;
  double tau_end;
  double escape_radius;
  double conv_tol;
  double window;
  double transient_frac;
} mdde_dde_config;

typedef struct {
  int max_iter;
  double escape_radius;
  double conv_tol;
} mdde_discrete_params;

typedef struct {
  mdde_mode mode;
  mdde_discrete_params discrete;
  mdde_dde_config dde;
} mdde_mode_config;

/* Optional fields are NaN when absent. */
typedef struct {
  mdde_orbit_kind kind;
  mdde_complex z_final;
  double escape_time;
  double residual;
  double amplitude;
  int non_finite;
} mdde_outcome;

typedef struct {
  int period;
  mdde_complex points[3];
  mdde_complex multiplier;
  mdde_complex c;
  double modulus; /* |z|, |y| or |x| for period 1, 2, 3 */
  int on_boundary;
} mdde_cycle;

typedef struct {
  double phi;
  double omega;
  mdde_complex c_h;
  double marginal_modulus;
} mdde_hopf_sample;

typedef struct {
  int stable;
  double binding_threshold;
  double phi_used;
  double omega_used;
} mdde_verdict;

typedef struct {
  double period;
  double spread;
  int n_peaks;
} mdde_period;

typedef struct {
  double re_min;
  double re_max;
  double im_min;
  double im_max;
  int width;
  int height;
} mdde_grid;

typedef struct {
  uint8_t r;
  uint8_t g;
  uint8_t b;
} mdde_rgb;

typedef struct {
  double escape_max; /* <= 0: raster maximum */
  mdde_rgb converged;
  mdde_rgb oscillating;
  mdde_rgb undecided;
} mdde_palette;

typedef struct mdde_table mdde_table;
typedef struct mdde_raster mdde_raster;
typedef struct mdde_image mdde_image;

/* ---- library ---------------------------------------------------------- */

MDDE_API const char* mdde_version(void);
MDDE_API const char* mdde_last_error(void);
MDDE_API const char* mdde_status_string(mdde_status status);
MDDE_API int mdde_default_workers(void);

/* ---- configuration ---------------------------------------------------- */

MDDE_API void mdde_dde_config_defaults(double tau0, double tau_end, mdde_dde_config* out);
/* Validates and snaps dt so that tau0 is an integer multiple of it. */
MDDE_API mdde_status mdde_dde_config_resolve(const mdde_dde_config* in, mdde_dde_config* out);
MDDE_API void mdde_discrete_params_defaults(mdde_discrete_params* out);
MDDE_API void mdde_palette_defaults(mdde_palette* out);

/* ---- core dynamics ---------------------------------------------------- */

MDDE_API mdde_complex mdde_map_step(mdde_complex z, mdde_complex c);
MDDE_API mdde_status mdde_iterate_orbit(mdde_complex c, const mdde_discrete_params* params,
                                        mdde_outcome* out);
/* Trajectory table columns: tau, z_re, z_im, abs_z. `trajectory` may be NULL. */
MDDE_API mdde_status mdde_integrate_dde(mdde_complex c, const mdde_dde_config* config,
                                        int sample_stride, mdde_table** trajectory,
                                        mdde_outcome* out);

/* ---- cycles and boundaries ------------------------------------------- */

MDDE_API mdde_complex mdde_cardioid_point(double phi);
MDDE_API mdde_complex mdde_period2_point(double phi);
MDDE_API mdde_status mdde_find_cycle(mdde_complex c, int n, mdde_complex seed,
                                     mdde_cycle* out);
/*
 * Boundary polyline as a table. Columns:
 *   cardioid, period2: phi, c_re, c_im
 *   period3:           theta, c_re, c_im
 *   hopf:              phi, omega, c_re, c_im, marginal_modulus  (needs tau0)
 * On MDDE_ERR_CONTINUATION_STALL the partial curve is still returned.
 */
MDDE_API mdde_status mdde_boundary_curve(mdde_curve_kind kind, int samples, double tau0,
                                         mdde_table** out);

/* ---- delay-equation stability ---------------------------------------- */

MDDE_API mdde_status mdde_solve_omega(double phi_eff, double tau0, double* omega);
MDDE_API mdde_status mdde_hopf_boundary_point(double phi, double tau0, mdde_hopf_sample* out);
MDDE_API mdde_status mdde_stationary_points(mdde_complex c, mdde_complex out[2]);
MDDE_API mdde_status mdde_is_stable(mdde_complex z_s, double tau0, mdde_verdict* out);
MDDE_API mdde_status mdde_nyquist_oracle(mdde_complex z_s, double tau0, double omega_max,
                                         int n_points, int* stable);
MDDE_API mdde_status mdde_predicted_period(double omega, double* period);
MDDE_API mdde_status mdde_ray_slope(double phi, double tau0, double* slope);

/* ---- sweeps and images ----------------------------------------------- */

/* workers <= 0 uses mdde_default_workers(); output bytes never depend on it. */
MDDE_API mdde_status mdde_render(const mdde_grid* grid, const mdde_mode_config* mode,
                                 int workers, mdde_raster** out);
MDDE_API void mdde_raster_free(mdde_raster* raster);
MDDE_API int mdde_raster_width(const mdde_raster* raster);
MDDE_API int mdde_raster_height(const mdde_raster* raster);
MDDE_API int mdde_raster_class(const mdde_raster* raster, int i, int j);
MDDE_API double mdde_raster_scalar(const mdde_raster* raster, int i, int j);
MDDE_API const uint8_t* mdde_raster_classes(const mdde_raster* raster);
/* counts[4] indexed by mdde_orbit_kind. */
MDDE_API mdde_status mdde_count_classes(const mdde_raster* raster, int x, int y, int width,
                                        int height, size_t counts[4]);
/* Columns: i, j, c_re, c_im, class, scalar. */
MDDE_API mdde_status mdde_raster_table(const mdde_raster* raster, const mdde_grid* grid,
                                       mdde_table** out);

MDDE_API mdde_status mdde_colorize(const mdde_raster* raster, const mdde_palette* palette,
                                   mdde_image** out);
MDDE_API void mdde_image_free(mdde_image* image);
MDDE_API int mdde_image_width(const mdde_image* image);
MDDE_API int mdde_image_height(const mdde_image* image);
MDDE_API const uint8_t* mdde_image_pixels(const mdde_image* image);
MDDE_API mdde_status mdde_overlay_curve(mdde_image* image, const mdde_grid* grid,
                                        const mdde_complex* points, size_t n_points,
                                        mdde_rgb color);
MDDE_API mdde_status mdde_write_ppm(const mdde_image* image, const char* path);

/* ---- bifurcation tools ----------------------------------------------- */

/* Columns: tau, z_re, z_im, abs_z. */
MDDE_API mdde_status mdde_time_series(mdde_complex c, const mdde_mode_config* mode, int stride,
                                      mdde_table** out);
/* Reads columns tau, z_re, z_im of a time-series table. */
MDDE_API mdde_status mdde_measure_period(const mdde_table* series, double transient_cut,
                                         mdde_period* out);
/* Columns: s, c_re, c_im, value. `branches` (n_params entries, may be NULL)
 * receives the branch count per parameter at tolerance branch_tol. */
MDDE_API mdde_status mdde_feigenbaum_scan(mdde_complex c0, mdde_complex dir, double s_min,
                                          double s_max, int n_params,
                                          const mdde_mode_config* mode, int workers,
                                          double branch_tol, int* branches, mdde_table** out);
/* Columns: radius, c_re, c_im, period, spread, n_peaks, status. */
MDDE_API mdde_status mdde_ray_frequency_check(double phi, double tau0, const double* radii,
                                              size_t n_radii, const mdde_dde_config* config,
                                              int workers, mdde_table** out);

/* ---- tables ---------------------------------------------------------- */

MDDE_API void mdde_table_free(mdde_table* table);
MDDE_API size_t mdde_table_rows(const mdde_table* table);
MDDE_API size_t mdde_table_cols(const mdde_table* table);
MDDE_API const char* mdde_table_column(const mdde_table* table, size_t col);
MDDE_API double mdde_table_get(const mdde_table* table, size_t row, size_t col);
/* 17 significant digits, '\n' line endings. */
MDDE_API mdde_status mdde_write_csv(const mdde_table* table, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* MDDE_H */
