#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mdde/types.hpp"

namespace mdde {

// Numeric values double as the raster class codes.
enum class OrbitKind : int {
  Escaped = 0,
  Converged = 1,
  Oscillating = 2,
  Undecided = 3,
};

const char* to_string(OrbitKind kind) noexcept;

struct OrbitOutcome {
  OrbitKind kind = OrbitKind::Undecided;
  Complex z_final{};
  std::optional<double> escape_time;  // Escaped only (iteration index in discrete mode)
  std::optional<double> residual;     // Converged only
  std::optional<double> amplitude;    // Oscillating only
  bool non_finite = false;            // escape was detected through a NaN/Inf state
};

/// Parameters of the discrete recurrence sweep.
struct DiscreteParams {
  int max_iter = 1000;
  double escape_radius = 2.0;
  double conv_tol = 1e-9;
};

/// Integration and classification policy for dz/dtau = -z + z(tau - tau0)^2 + c.
///
/// The constructor snaps the step so that tau0 is an exact multiple of dt
/// (delay_steps = round(tau0 / dt) >= 4, dt = tau0 / delay_steps).
class DdeConfig {
 public:
  DdeConfig(double tau0, double dt, double tau_end, double escape_radius,
            double conv_tol, double window, double transient_frac);

  /// dt = tau0/200, escape radius 10, conv_tol 1e-6, window 10*tau0, transient 0.5.
  static DdeConfig with_defaults(double tau0, double tau_end);

  double tau0() const { return tau0_; }
  double dt() const { return dt_; }
  double tau_end() const { return tau_end_; }
  double escape_radius() const { return escape_radius_; }
  double conv_tol() const { return conv_tol_; }
  double window() const { return window_; }
  double transient_frac() const { return transient_frac_; }
  int delay_steps() const { return delay_steps_; }
  long long total_steps() const { return total_steps_; }

  DdeConfig with_tau_end(double tau_end) const;
  DdeConfig with_window(double window) const;

 private:
  double tau0_;
  double dt_;
  double tau_end_;
  double escape_radius_;
  double conv_tol_;
  double window_;
  double transient_frac_;
  int delay_steps_;
  long long total_steps_;
};

struct TrajectorySample {
  double tau;
  Complex z;
};

using Trajectory = std::vector<TrajectorySample>;

/// Ring of (z, dz/dtau) samples on the uniform grid tau_k = k*dt covering the
/// most recent span tau0 + dt. Times before zero read the zero history.
class HistoryBuffer {
 public:
  HistoryBuffer(double dt, int delay_steps);

  /// Appends the sample at node `node`; nodes must arrive consecutively from 0.
  void push(long long node, Complex z, Complex dz);

  long long newest_node() const { return newest_; }
  double now() const { return static_cast<double>(newest_) * dt_; }

  /// Stored value at grid node k (zero for k < 0).
  Complex at_node(long long k) const;
  Complex derivative_at_node(long long k) const;

  /// Cubic Hermite value at the midpoint of [node k, node k+1].
  Complex midpoint(long long k) const;

  /// z(q) for now() - tau0 - dt <= q <= now(); exact on grid nodes.
  Complex query(double q) const;

 private:
  std::size_t slot(long long k) const;

  double dt_;
  int delay_steps_;
  long long newest_ = -1;
  std::vector<Complex> z_;
  std::vector<Complex> dz_;
};

struct DdeResult {
  Trajectory trajectory;
  OrbitOutcome outcome;
};

Complex map_step(Complex z, Complex c);

/// Orbit of z0 = 0 under z -> z^2 + c.
OrbitOutcome iterate_orbit(Complex c, const DiscreteParams& params);
OrbitOutcome iterate_orbit(Complex c, int max_iter, double escape_radius = 2.0);

/// z_0 .. z_k of the discrete orbit, ending with the first escaped iterate if any.
std::vector<Complex> discrete_orbit(Complex c, int max_iter, double escape_radius);

/// Fixed-step RK4 with Hermite history from z = 0 on [-tau0, 0].
/// The trajectory holds every `sample_stride`-th node up to the escape node.
DdeResult integrate_dde(Complex c, const DdeConfig& config, int sample_stride);

/// Same integration without recording a strided trajectory.
OrbitOutcome classify_dde(Complex c, const DdeConfig& config);

/// Precedence Escaped > Converged > Oscillating > Undecided.
OrbitOutcome classify_trajectory(const Trajectory& traj, Complex c,
                                 const DdeConfig& config);

}  // namespace mdde
