#pragma once

#include <utility>
#include <vector>

#include "mdde/types.hpp"

namespace mdde {

/// One point of the Hopf boundary of the delay equation.
struct HopfSample {
  double phi = 0.0;    // argument of the stationary point, [0, 2pi)
  double omega = 0.0;  // marginal circular frequency
  Complex c_h{};
  double marginal_modulus = 0.5;  // sqrt(1 + omega^2) / 2
};

struct StabilityVerdict {
  bool stable = false;
  double binding_threshold = 0.5;
  double phi_used = 0.0;
  double omega_used = 0.0;
};

/// Unique omega >= 0 with omega*tau0 + atan(omega) = phi_eff.
double solve_omega(double phi_eff, double tau0);

/// phi is reduced to [0, 2pi); samples in (pi, 2pi) are conjugates of 2pi - phi.
HopfSample hopf_boundary_point(double phi, double tau0);

/// Uniform phi grid over [0, 2pi).
std::vector<HopfSample> hopf_boundary_curve(double tau0, int n_samples);

/// Roots of z^2 - z + c, (1 - sqrt(1-4c))/2 first.
std::pair<Complex, Complex> stationary_points(Complex c);

/// Linear stability of the stationary point z_s of the delay equation.
StabilityVerdict is_stable(Complex z_s, double tau0);

/// Winding-number test on 1 - 2 z_s e^{-i w tau0} / (1 + i w), w in [-omega_max, omega_max].
/// Independent of is_stable; throws InconclusiveWinding when the grid is too coarse.
bool nyquist_oracle(Complex z_s, double tau0, double omega_max, int n_points);

double predicted_period(double omega);

/// Slope c_Hi / c_Hr of the Hopf point at phi.
double ray_slope(double phi, double tau0);

}  // namespace mdde
