#include "mdde/stability.hpp"

#include <cmath>

#include "unit_circle.hpp"

namespace mdde {

double solve_omega(double phi_eff, double tau0) {
  require(std::isfinite(phi_eff) && phi_eff >= 0.0, "phi_eff must be non-negative");
  require(std::isfinite(tau0) && tau0 > 0.0, "tau0 must be positive");
  if (phi_eff == 0.0) return 0.0;

  const auto f = [&](double w) { return w * tau0 + std::atan(w) - phi_eff; };
  // f(0) = -phi_eff < 0 and f(phi_eff / tau0) = atan(phi_eff / tau0) > 0.
  double lo = 0.0;
  double hi = phi_eff / tau0;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double w = 0.5 * (lo + hi);
  return w - f(w) / (tau0 + 1.0 / (1.0 + w * w));
}

namespace {

double reduce_angle(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace

HopfSample hopf_boundary_point(double phi, double tau0) {
  require(std::isfinite(phi), "phi must be finite");
  const double angle = reduce_angle(phi);
  if (angle > kPi) {
    HopfSample s = hopf_boundary_point(kTwoPi - angle, tau0);
    s.phi = angle;
    s.c_h = std::conj(s.c_h);
    return s;
  }

  HopfSample s;
  s.phi = angle;
  s.omega = solve_omega(angle, tau0);
  const double gain = 1.0 + s.omega * s.omega;
  s.marginal_modulus = std::sqrt(gain) / 2.0;
  const Complex u = unit(angle);
  const Complex u2 = unit(2.0 * angle);
  s.c_h = s.marginal_modulus * u - (gain / 4.0) * u2;
  return s;
}

std::vector<HopfSample> hopf_boundary_curve(double tau0, int n_samples) {
  require(n_samples >= 8, "n_samples must be at least 8");
  std::vector<HopfSample> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k)
    out.push_back(hopf_boundary_point(kTwoPi * k / n_samples, tau0));
  return out;
}

std::pair<Complex, Complex> stationary_points(Complex c) {
  require(is_finite(c), "c must be finite");
  const Complex root = std::sqrt(1.0 - 4.0 * c);
  return {0.5 * (1.0 - root), 0.5 * (1.0 + root)};
}

StabilityVerdict is_stable(Complex z_s, double tau0) {
  require(is_finite(z_s), "z_s must be finite");
  double phi = std::arg(z_s);
  if (phi < 0.0) phi += kTwoPi;
  // The k = 0 branch of the smaller of phi, 2pi - phi gives the first crossing.
  const double phi_eff = std::min(phi, kTwoPi - phi);

  StabilityVerdict v;
  v.phi_used = phi_eff;
  v.omega_used = solve_omega(phi_eff, tau0);
  v.binding_threshold = std::sqrt(1.0 + v.omega_used * v.omega_used) / 2.0;
  v.stable = std::abs(z_s) < v.binding_threshold;
  return v;
}

bool nyquist_oracle(Complex z_s, double tau0, double omega_max, int n_points) {
  require(is_finite(z_s), "z_s must be finite");
  require(tau0 > 0.0, "tau0 must be positive");
  require(omega_max >= std::max(10.0, 8.0 * std::abs(z_s)),
          "omega_max must be at least max(10, 8|z_s|)");
  require(n_points >= 10000, "n_points must be at least 1e4");

  const auto return_difference = [&](double w) {
    const Complex open_loop =
        2.0 * z_s * std::polar(1.0, -w * tau0) / Complex{1.0, w};
    return open_loop - 1.0;
  };

  double winding = 0.0;
  Complex prev = return_difference(-omega_max);
  for (int k = 1; k < n_points; ++k) {
    const double w = -omega_max + 2.0 * omega_max * k / (n_points - 1);
    const Complex cur = return_difference(w);
    const double step = std::arg(cur / prev);
    if (std::abs(step) > kPi / 2.0)
      throw Error(ErrorCode::InconclusiveWinding,
                  "argument jump exceeds pi/2; refine the frequency grid");
    winding += step;
    prev = cur;
  }
  // Closing arc at |w| -> inf stays near -1; include the chord between the ends.
  winding += std::arg(return_difference(-omega_max) / prev);
  return std::lround(winding / kTwoPi) == 0;
}

double predicted_period(double omega) {
  require(std::isfinite(omega) && omega > 0.0, "omega must be positive");
  return kTwoPi / omega;
}

double ray_slope(double phi, double tau0) {
  const HopfSample s = hopf_boundary_point(phi, tau0);
  if (std::abs(s.c_h.real()) < 1e-14)
    throw Error(ErrorCode::DivisionByZeroRay, "Hopf point lies on the imaginary axis");
  return s.c_h.imag() / s.c_h.real();
}

}  // namespace mdde
