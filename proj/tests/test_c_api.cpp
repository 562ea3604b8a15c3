#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "mdde/mdde.h"

namespace {

struct TableGuard {
  mdde_table* t = nullptr;
  ~TableGuard() { mdde_table_free(t); }
};

std::string tmp_path(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::path(MDDE_TEST_TMP) / "capi";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("C API: library info and error plumbing") {
  CHECK(std::string(mdde_version()) == "1.0.0");
  CHECK(std::string(mdde_status_string(MDDE_OK)) == "ok");
  CHECK(mdde_default_workers() >= 1);

  mdde_discrete_params p;
  mdde_discrete_params_defaults(&p);
  p.max_iter = 0;
  mdde_outcome out;
  CHECK(mdde_iterate_orbit({0, 0}, &p, &out) == MDDE_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(mdde_last_error()) > 0);
  CHECK(mdde_iterate_orbit({0, 0}, nullptr, &out) == MDDE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API: dynamics") {
  const mdde_complex z = mdde_map_step({1, 1}, {-1, 0});
  CHECK(z.re == -1.0);
  CHECK(z.im == 2.0);

  mdde_discrete_params p;
  mdde_discrete_params_defaults(&p);
  CHECK(p.max_iter == 1000);
  CHECK(p.escape_radius == 2.0);
  mdde_outcome out;
  REQUIRE(mdde_iterate_orbit({1, 0}, &p, &out) == MDDE_OK);
  CHECK(out.kind == MDDE_ESCAPED);
  CHECK(out.escape_time == 3.0);
  CHECK(std::isnan(out.residual));
  CHECK(std::isnan(out.amplitude));

  mdde_dde_config raw;
  mdde_dde_config_defaults(10.0, 300.0, &raw);
  CHECK(raw.dt == 0.05);
  CHECK(raw.window == 100.0);
  mdde_dde_config cfg;
  REQUIRE(mdde_dde_config_resolve(&raw, &cfg) == MDDE_OK);

  TableGuard traj;
  REQUIRE(mdde_integrate_dde({0.1, 0}, &cfg, 100, &traj.t, &out) == MDDE_OK);
  CHECK(out.kind == MDDE_CONVERGED);
  CHECK(std::abs(out.z_final.re - (1 - std::sqrt(0.6)) / 2) < 1e-6);
  CHECK(mdde_table_cols(traj.t) == 4);
  CHECK(std::string(mdde_table_column(traj.t, 3)) == "abs_z");
  CHECK(mdde_table_rows(traj.t) == 61);
  CHECK(mdde_table_get(traj.t, 60, 0) == doctest::Approx(300.0));

  raw.tau_end = 50.0;
  CHECK(mdde_dde_config_resolve(&raw, &cfg) == MDDE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API: cycles and boundaries") {
  mdde_cycle cyc;
  REQUIRE(mdde_find_cycle({-1.25, 0}, 2, {0.3, 0}, &cyc) == MDDE_OK);
  CHECK(cyc.period == 2);
  CHECK(cyc.modulus == doctest::Approx(0.25));
  CHECK(cyc.on_boundary == 1);
  CHECK(mdde_find_cycle({-0.75, 0}, 2, {0.1, 0}, &cyc) == MDDE_ERR_DEGENERATE_CYCLE);

  TableGuard card;
  REQUIRE(mdde_boundary_curve(MDDE_CURVE_CARDIOID, 4, 0.0, &card.t) == MDDE_OK);
  CHECK(mdde_table_rows(card.t) == 4);
  CHECK(mdde_table_get(card.t, 0, 1) == 0.25);
  CHECK(mdde_table_get(card.t, 2, 1) == -0.75);

  TableGuard hopf;
  REQUIRE(mdde_boundary_curve(MDDE_CURVE_HOPF, 8, 10.0, &hopf.t) == MDDE_OK);
  CHECK(mdde_table_cols(hopf.t) == 5);
  CHECK(mdde_table_get(hopf.t, 4, 2) == doctest::Approx(-0.7905739172).epsilon(1e-9));

  TableGuard p3;
  REQUIRE(mdde_boundary_curve(MDDE_CURVE_PERIOD3, 32, 0.0, &p3.t) == MDDE_OK);
  CHECK(mdde_table_rows(p3.t) == 32);
  CHECK(std::string(mdde_table_column(p3.t, 0)) == "theta");

  mdde_table* bad = nullptr;
  CHECK(mdde_boundary_curve(MDDE_CURVE_HOPF, 8, -1.0, &bad) == MDDE_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
}

TEST_CASE("C API: stability") {
  double w = 0.0;
  REQUIRE(mdde_solve_omega(2.517, 10.0, &w) == MDDE_OK);
  CHECK(w == doctest::Approx(0.2291718314).epsilon(1e-9));

  mdde_hopf_sample s;
  REQUIRE(mdde_hopf_boundary_point(3.141592653589793, 10.0, &s) == MDDE_OK);
  CHECK(s.c_h.re == doctest::Approx(-0.7905739172).epsilon(1e-9));

  mdde_complex roots[2];
  REQUIRE(mdde_stationary_points({-0.75, 0}, roots) == MDDE_OK);
  CHECK(roots[0].re == -0.5);
  CHECK(roots[1].re == 1.5);

  mdde_verdict v;
  REQUIRE(mdde_is_stable(roots[0], 10.0, &v) == MDDE_OK);
  CHECK(v.stable == 1);
  int ny = -1;
  REQUIRE(mdde_nyquist_oracle({-0.55, 0}, 10.0, 50.0, 100000, &ny) == MDDE_OK);
  CHECK(ny == 0);
  CHECK(mdde_nyquist_oracle({-0.5, 0}, 1000.0, 50.0, 10000, &ny) ==
        MDDE_ERR_INCONCLUSIVE_WINDING);

  double period = 0.0;
  REQUIRE(mdde_predicted_period(3.141592653589793, &period) == MDDE_OK);
  CHECK(period == doctest::Approx(2.0));
  CHECK(mdde_predicted_period(0.0, &period) == MDDE_ERR_INVALID_ARGUMENT);

  double k = 0.0;
  REQUIRE(mdde_ray_slope(2.517, 10.0, &k) == MDDE_OK);
  CHECK(k == doctest::Approx(-1.1007674575).epsilon(1e-9));
}

TEST_CASE("C API: render, colour and export") {
  const mdde_grid grid{-2.0, 0.75, -1.25, 1.25, 40, 30};
  mdde_mode_config mode{};
  mode.mode = MDDE_MODE_DISCRETE;
  mdde_discrete_params_defaults(&mode.discrete);

  mdde_raster* r1 = nullptr;
  mdde_raster* r2 = nullptr;
  REQUIRE(mdde_render(&grid, &mode, 1, &r1) == MDDE_OK);
  REQUIRE(mdde_render(&grid, &mode, 3, &r2) == MDDE_OK);
  CHECK(mdde_raster_width(r1) == 40);
  CHECK(mdde_raster_height(r1) == 30);
  CHECK(std::memcmp(mdde_raster_classes(r1), mdde_raster_classes(r2), 40 * 30) == 0);

  size_t counts[4];
  REQUIRE(mdde_count_classes(r1, 0, 0, 40, 30, counts) == MDDE_OK);
  CHECK(counts[0] + counts[1] + counts[2] + counts[3] == 1200);
  CHECK(counts[MDDE_CONVERGED] > 0);
  CHECK(mdde_count_classes(r1, 30, 0, 20, 30, counts) == MDDE_ERR_INVALID_ARGUMENT);

  mdde_palette pal;
  mdde_palette_defaults(&pal);
  mdde_image* img = nullptr;
  REQUIRE(mdde_colorize(r1, &pal, &img) == MDDE_OK);
  CHECK(mdde_image_width(img) == 40);
  const mdde_complex line[] = {{-2.0, 0.0}, {0.75, 0.0}};
  REQUIRE(mdde_overlay_curve(img, &grid, line, 2, {255, 0, 0}) == MDDE_OK);
  const std::string ppm = tmp_path("render.ppm");
  REQUIRE(mdde_write_ppm(img, ppm.c_str()) == MDDE_OK);
  CHECK(std::filesystem::file_size(ppm) == 13 + 3 * 1200);
  CHECK(mdde_write_ppm(img, "/nonexistent-dir/x.ppm") == MDDE_ERR_IO);

  TableGuard table;
  REQUIRE(mdde_raster_table(r1, &grid, &table.t) == MDDE_OK);
  CHECK(mdde_table_rows(table.t) == 1200);
  CHECK(mdde_table_get(table.t, 0, 2) == doctest::Approx(-2.0 + 2.75 / 80));
  REQUIRE(mdde_write_csv(table.t, tmp_path("render.csv").c_str()) == MDDE_OK);

  mdde_image_free(img);
  mdde_raster_free(r1);
  mdde_raster_free(r2);
  mdde_raster_free(nullptr);
  mdde_image_free(nullptr);
  mdde_table_free(nullptr);
}

TEST_CASE("C API: bifurcation tools") {
  mdde_mode_config mode{};
  mode.mode = MDDE_MODE_DISCRETE;
  mdde_discrete_params_defaults(&mode.discrete);
  mode.discrete.max_iter = 20000;

  TableGuard series;
  REQUIRE(mdde_time_series({1, 0}, &mode, 1, &series.t) == MDDE_OK);
  CHECK(mdde_table_rows(series.t) == 4);
  mdde_period per;
  CHECK(mdde_measure_period(series.t, 0.0, &per) == MDDE_ERR_TOO_FEW_PEAKS);

  std::vector<int> branches(5, -1);
  TableGuard scan;
  REQUIRE(mdde_feigenbaum_scan({0, 0}, {1, 0}, -1.3, -0.5, 5, &mode, 2, 1e-4, branches.data(),
                               &scan.t) == MDDE_OK);
  CHECK(branches == std::vector<int>{4, 2, 2, 1, 1});
  CHECK(mdde_table_cols(scan.t) == 4);
  CHECK(mdde_table_rows(scan.t) > 5);

  mdde_dde_config raw;
  mdde_dde_config_defaults(10.0, 600.0, &raw);
  raw.dt = 0.01;
  mdde_dde_config cfg;
  REQUIRE(mdde_dde_config_resolve(&raw, &cfg) == MDDE_OK);
  const double radii[] = {0.2};
  TableGuard ray;
  REQUIRE(mdde_ray_frequency_check(2.517, 10.0, radii, 1, &cfg, 1, &ray.t) == MDDE_OK);
  CHECK(mdde_table_rows(ray.t) == 1);
  CHECK(mdde_table_get(ray.t, 0, 6) == MDDE_ERR_TOO_FEW_PEAKS);
  CHECK(std::isnan(mdde_table_get(ray.t, 0, 3)));
}
