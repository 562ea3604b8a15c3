#include <cmath>

#include "doctest.h"
#include "mdde/dynamics.hpp"

using namespace mdde;

namespace {

Complex sample_at(const Trajectory& traj, double tau, double dt) {
  const auto k = static_cast<std::size_t>(std::llround(tau / dt));
  REQUIRE(k < traj.size());
  REQUIRE(std::abs(traj[k].tau - tau) < 1e-9);
  return traj[k].z;
}

}  // namespace

TEST_CASE("map_step") {
  CHECK(map_step({0, 0}, {0.3, 0.1}) == Complex(0.3, 0.1));
  CHECK(map_step({0, 1}, {0, 0}) == Complex(-1, 0));
  CHECK(map_step({1, 1}, {-1, 0}) == Complex(-1, 2));
}

TEST_CASE("iterate_orbit classifies the textbook parameters") {
  const auto fixed = iterate_orbit({0, 0}, 1000);
  CHECK(fixed.kind == OrbitKind::Converged);
  CHECK(std::abs(fixed.z_final) == 0.0);
  REQUIRE(fixed.residual.has_value());
  CHECK(*fixed.residual < 1e-8);

  const auto esc = iterate_orbit({1, 0}, 1000, 2.0);
  CHECK(esc.kind == OrbitKind::Escaped);
  REQUIRE(esc.escape_time.has_value());
  CHECK(*esc.escape_time == 3.0);
  CHECK(esc.z_final == Complex(5, 0));

  const auto cyc = iterate_orbit({-1, 0}, 1000);
  CHECK(cyc.kind == OrbitKind::Oscillating);
  REQUIRE(cyc.amplitude.has_value());
  CHECK(*cyc.amplitude == doctest::Approx(1.0));
  CHECK((cyc.z_final == Complex(0, 0) || cyc.z_final == Complex(-1, 0)));
}

TEST_CASE("iterate_orbit rejects bad parameters") {
  CHECK_THROWS_AS(iterate_orbit({0, 0}, 0), Error);
  CHECK_THROWS_AS(iterate_orbit({0, 0}, 10, 1.5), Error);
}

TEST_CASE("discrete orbit is conjugation equivariant bit for bit") {
  const Complex c{-0.12, 0.74};
  const auto a = discrete_orbit(c, 200, 2.0);
  const auto b = discrete_orbit(std::conj(c), 200, 2.0);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].real() == b[k].real());
    CHECK(a[k].imag() == -b[k].imag());
  }
  CHECK(iterate_orbit(c, 500).kind == iterate_orbit(std::conj(c), 500).kind);
}

TEST_CASE("DdeConfig snaps the step and validates") {
  const DdeConfig cfg(10.0, 0.0333, 300.0, 10.0, 1e-6, 50.0, 0.5);
  CHECK(cfg.delay_steps() == 300);
  CHECK(cfg.dt() == doctest::Approx(10.0 / 300.0).epsilon(1e-15));
  CHECK(cfg.total_steps() == 9000);

  const DdeConfig coarse(1.0, 0.9, 50.0, 10.0, 1e-6, 5.0, 0.5);
  CHECK(coarse.delay_steps() == 4);
  CHECK(coarse.dt() == 0.25);

  CHECK_THROWS_AS(DdeConfig(10.0, 0.05, 40.0, 10.0, 1e-6, 50.0, 0.5), Error);
  CHECK_THROWS_AS(DdeConfig(-1.0, 0.05, 400.0, 10.0, 1e-6, 50.0, 0.5), Error);
  CHECK_THROWS_AS(DdeConfig(10.0, 0.05, 400.0, 10.0, 1e-6, 50.0, 1.0), Error);

  const auto d = DdeConfig::with_defaults(10.0, 300.0);
  CHECK(d.dt() == 0.05);
  CHECK(d.escape_radius() == 10.0);
  CHECK(d.conv_tol() == 1e-6);
  CHECK(d.window() == 100.0);
  CHECK(d.transient_frac() == 0.5);
}

TEST_CASE("HistoryBuffer answers on-grid exactly and off-grid by Hermite") {
  const double dt = 0.1;
  HistoryBuffer h(dt, 10);
  // z = tau^3 has an exact cubic Hermite interpolant.
  for (long long n = 0; n <= 40; ++n) {
    const double t = n * dt;
    h.push(n, {t * t * t, -t}, {3 * t * t, -1});
  }
  CHECK(h.at_node(35) == Complex(3.5 * 3.5 * 3.5, -3.5));
  CHECK(h.query(3.0 + 0.0) == h.at_node(30));
  const double q = 3.437;
  const Complex v = h.query(q);
  CHECK(v.real() == doctest::Approx(q * q * q).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(-q).epsilon(1e-12));
  const Complex mid = h.midpoint(33);
  CHECK(mid.real() == doctest::Approx(std::pow(3.35, 3)).epsilon(1e-12));
  CHECK(h.midpoint(-1) == Complex{});
  CHECK(h.at_node(-5) == Complex{});
  CHECK_THROWS_AS(h.query(2.8), Error);
  CHECK_THROWS_AS(h.push(45, {}, {}), Error);
}

TEST_CASE("zero parameter keeps the state identically zero") {
  const auto cfg = DdeConfig::with_defaults(10.0, 200.0);
  const auto res = integrate_dde({0, 0}, cfg, 7);
  CHECK(res.outcome.kind == OrbitKind::Converged);
  for (const auto& s : res.trajectory) {
    CHECK(s.z.real() == 0.0);
    CHECK(s.z.imag() == 0.0);
  }
}

TEST_CASE("c = 0.1 relaxes to the stable stationary root") {
  const auto cfg = DdeConfig::with_defaults(10.0, 300.0);
  const auto res = integrate_dde({0.1, 0}, cfg, 10);
  const double root = (1.0 - std::sqrt(0.6)) / 2.0;
  CHECK(res.outcome.kind == OrbitKind::Converged);
  CHECK(std::abs(res.outcome.z_final - root) < 1e-6);
  REQUIRE(res.outcome.residual.has_value());
  CHECK(*res.outcome.residual < 10.0 * cfg.conv_tol());
  CHECK(std::abs(res.trajectory.back().z - root) < 1e-4);
}

TEST_CASE("strided trajectory is uniform") {
  const DdeConfig cfg(10.0, 0.05, 100.0, 10.0, 1e-6, 50.0, 0.5);
  const auto res = integrate_dde({-0.3, 0.2}, cfg, 3);
  REQUIRE(res.trajectory.size() > 10);
  const double step = 3 * cfg.dt();
  for (std::size_t k = 1; k < res.trajectory.size(); ++k)
    CHECK(res.trajectory[k].tau - res.trajectory[k - 1].tau == doctest::Approx(step).epsilon(1e-12));
  CHECK_THROWS_AS(integrate_dde({0, 0}, cfg, 0), Error);
}

TEST_CASE("delay trajectory is conjugation equivariant bit for bit") {
  const auto cfg = DdeConfig::with_defaults(10.0, 400.0);
  for (const Complex c : {Complex(-0.52, 0.57), Complex(-1.2, 0.3), Complex(0.2, 0.55)}) {
    const auto a = integrate_dde(c, cfg, 1);
    const auto b = integrate_dde(std::conj(c), cfg, 1);
    REQUIRE(a.trajectory.size() == b.trajectory.size());
    bool exact = true;
    for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
      exact = exact && a.trajectory[k].tau == b.trajectory[k].tau &&
              a.trajectory[k].z.real() == b.trajectory[k].z.real() &&
              a.trajectory[k].z.imag() == -b.trajectory[k].z.imag();
    }
    CHECK(exact);
    CHECK(a.outcome.kind == b.outcome.kind);
  }
}

TEST_CASE("integrator converges at third order or better") {
  const Complex c{0.1, 0};
  auto run = [&](double dt) {
    const DdeConfig cfg(10.0, dt, 35.0, 10.0, 1e-6, 10.0, 0.5);
    return integrate_dde(c, cfg, 1).trajectory;
  };
  const auto coarse = run(0.2);
  const auto fine = run(0.1);
  const auto ref = run(0.025);
  double e_coarse = 0.0;
  double e_fine = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double tau = 25.0 + k;
    const Complex r = sample_at(ref, tau, 0.025);
    e_coarse = std::max(e_coarse, std::abs(sample_at(coarse, tau, 0.2) - r));
    e_fine = std::max(e_fine, std::abs(sample_at(fine, tau, 0.1) - r));
  }
  REQUIRE(e_fine > 0.0);
  CHECK(e_coarse / e_fine >= 8.0);
}

TEST_CASE("long delay reproduces the map as a staircase") {
  const DdeConfig cfg(50.0, 0.05, 300.0, 10.0, 1e-6, 50.0, 0.5);
  for (const Complex c : {Complex(-1, 0), Complex(-0.5, 0.3), Complex(0.2, 0.1)}) {
    const auto traj = integrate_dde(c, cfg, 1).trajectory;
    const auto map = discrete_orbit(c, 5, 2.0);
    REQUIRE(map.size() == 6);
    for (int k = 1; k <= 5; ++k) {
      const Complex z = sample_at(traj, 50.0 * k - 1.0, cfg.dt());
      CHECK(std::abs(z - map[k]) < 0.01);
    }
  }
}

TEST_CASE("classify_trajectory on constructed inputs") {
  const auto cfg = DdeConfig::with_defaults(10.0, 300.0);

  Trajectory flat;
  for (int n = 0; n <= 6000; ++n) flat.push_back({n * 0.05, {0, 0}});
  CHECK(classify_trajectory(flat, {0, 0}, cfg).kind == OrbitKind::Converged);

  Trajectory wave;
  for (int n = 0; n <= 6000; ++n) {
    const double tau = n * 0.05;
    wave.push_back({tau, {2.0 + std::cos(kTwoPi * tau / 27.417), 0}});
  }
  const auto osc = classify_trajectory(wave, {-0.5, 0.55}, cfg);
  CHECK(osc.kind == OrbitKind::Oscillating);
  REQUIRE(osc.amplitude.has_value());
  CHECK(*osc.amplitude == doctest::Approx(3.0).epsilon(1e-6));

  Trajectory burst;
  for (int n = 0; n <= 412; ++n) burst.push_back({n * 0.1, {n < 412 ? 1.0 : 11.0, 0}});
  const auto esc = classify_trajectory(burst, {1, 0}, cfg);
  CHECK(esc.kind == OrbitKind::Escaped);
  REQUIRE(esc.escape_time.has_value());
  CHECK(*esc.escape_time == doctest::Approx(41.2));

  Trajectory drifting;
  for (int n = 0; n <= 6000; ++n) drifting.push_back({n * 0.05, {n * 1e-4, 0}});
  CHECK(classify_trajectory(drifting, {0, 0}, cfg).kind == OrbitKind::Undecided);
}

TEST_CASE("escape is reported at the first crossing") {
  const auto cfg = DdeConfig::with_defaults(10.0, 300.0);
  const auto res = integrate_dde({0.6, 0}, cfg, 1);
  REQUIRE(res.outcome.kind == OrbitKind::Escaped);
  REQUIRE(res.outcome.escape_time.has_value());
  const double t_esc = *res.outcome.escape_time;
  for (const auto& s : res.trajectory) {
    if (s.tau < t_esc) CHECK(std::abs(s.z) <= cfg.escape_radius());
  }
  CHECK(res.trajectory.back().tau <= t_esc + 1e-12);
  CHECK(classify_dde({0.6, 0}, cfg).escape_time == res.outcome.escape_time);
}
