#pragma once

#include <optional>
#include <vector>

#include "mdde/sweep.hpp"
#include "mdde/types.hpp"

namespace mdde {

/// Uniformly spaced samples of z(tau) (or z_k with tau = k in discrete mode).
struct TimeSeries {
  std::vector<TrajectorySample> samples;
};

struct PeriodEstimate {
  double period = 0.0;
  double spread = 0.0;  // population std-dev of peak spacings
  int n_peaks = 0;
};

struct FeigenbaumPoint {
  double s = 0.0;
  Complex c{};
  OrbitKind kind = OrbitKind::Undecided;
  std::vector<double> values;  // empty when the orbit escaped
};

struct ScanLine {
  Complex c0{};
  Complex dir{1.0, 0.0};
  double s_min = 0.0;
  double s_max = 1.0;
  int n_params = 2;
};

struct RayProbe {
  double radius = 0.0;
  Complex c{};
  std::optional<PeriodEstimate> estimate;
  std::optional<ErrorCode> error;
};

inline constexpr int kFeigenbaumKeep = 64;

TimeSeries time_series(Complex c, const ModeConfig& mode, int stride);

/// Local maxima of |z| after `transient_cut`, refined by a parabola through
/// each peak and its neighbours. Throws TooFewPeaks below three maxima.
PeriodEstimate measure_period(const TimeSeries& series, double transient_cut);

/// Post-transient attractor samples along c = c0 + s*dir.
///
/// Discrete mode keeps the last 64 |z_k|. Delay mode keeps the last 64 local
/// extrema (maxima and minima) of |z| over the tail beyond transient_frac, or
/// the single value |z_final| when the tail is flat.
std::vector<FeigenbaumPoint> feigenbaum_scan(const ScanLine& line, const ModeConfig& mode,
                                             int workers = 0);

/// Number of clusters among `values` separated by gaps larger than `tol`.
int count_branches(std::vector<double> values, double tol);

/// Simulates c = r e^{i arg c_H(phi, tau0)} for each radius r and measures the
/// period of |z| beyond tau_end / 2.
std::vector<RayProbe> ray_frequency_check(double phi, double tau0,
                                          const std::vector<double>& radii,
                                          const DdeConfig& config, int workers = 0);

}  // namespace mdde
