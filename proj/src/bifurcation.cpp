#include "mdde/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "mdde/stability.hpp"
#include "parallel.hpp"
#include "peaks.hpp"

namespace mdde {

TimeSeries time_series(Complex c, const ModeConfig& mode, int stride) {
  require(stride >= 1, "stride must be at least 1");
  TimeSeries ts;
  if (const auto* p = std::get_if<DiscreteParams>(&mode)) {
    const auto orbit = discrete_orbit(c, p->max_iter, p->escape_radius);
    for (std::size_t k = 0; k < orbit.size(); k += static_cast<std::size_t>(stride))
      ts.samples.push_back({static_cast<double>(k), orbit[k]});
  } else {
    ts.samples = integrate_dde(c, std::get<DdeConfig>(mode), stride).trajectory;
  }
  return ts;
}

namespace {

// A tail whose |z| varies less than this (relative) is treated as constant.
constexpr double kFlatTol = 1e-9;

bool is_flat(const std::vector<double>& mags) {
  if (mags.empty()) return true;
  const auto [lo, hi] = std::minmax_element(mags.begin(), mags.end());
  return *hi - *lo <= kFlatTol * std::max(1.0, *hi);
}

}  // namespace

PeriodEstimate measure_period(const TimeSeries& series, double transient_cut) {
  std::vector<double> tau;
  std::vector<double> mag;
  for (const auto& s : series.samples) {
    if (s.tau < transient_cut) continue;
    tau.push_back(s.tau);
    mag.push_back(std::abs(s.z));
  }

  std::vector<double> peaks;
  if (!is_flat(mag)) {
    for (const auto [k, last] : detail::local_maxima(mag, 1.0)) {
      if (last > k + 1) {
        peaks.push_back(0.5 * (tau[k] + tau[last]));
        continue;
      }
      // A two-sample plateau yields offset 1/2 from the same parabola.
      const double curvature = mag[k - 1] - 2.0 * mag[k] + mag[k + 1];
      const double offset = 0.5 * (mag[k - 1] - mag[k + 1]) / curvature;
      const double h = 0.5 * (tau[k + 1] - tau[k - 1]);
      peaks.push_back(tau[k] + offset * h);
    }
  }
  if (peaks.size() < 3)
    throw Error(ErrorCode::TooFewPeaks, "fewer than three maxima after the transient cut");

  std::vector<double> gaps(peaks.size() - 1);
  for (std::size_t k = 0; k + 1 < peaks.size(); ++k) gaps[k] = peaks[k + 1] - peaks[k];
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
  double var = 0.0;
  for (const double g : gaps) var += (g - mean) * (g - mean);

  PeriodEstimate est;
  est.period = mean;
  est.spread = std::sqrt(var / gaps.size());
  est.n_peaks = static_cast<int>(peaks.size());
  return est;
}

namespace {

FeigenbaumPoint scan_discrete(Complex c, const DiscreteParams& p) {
  FeigenbaumPoint pt;
  pt.c = c;
  std::deque<double> tail;
  Complex z{};
  for (int k = 1; k <= p.max_iter; ++k) {
    z = map_step(z, c);
    if (!(std::abs(z) <= p.escape_radius)) {
      pt.kind = OrbitKind::Escaped;
      return pt;
    }
    tail.push_back(std::abs(z));
    if (tail.size() > kFeigenbaumKeep) tail.pop_front();
  }
  pt.kind = iterate_orbit(c, p).kind;
  pt.values.assign(tail.begin(), tail.end());
  return pt;
}

FeigenbaumPoint scan_dde(Complex c, const DdeConfig& cfg) {
  FeigenbaumPoint pt;
  pt.c = c;
  const DdeResult r = integrate_dde(c, cfg, 1);
  pt.kind = r.outcome.kind;
  if (pt.kind == OrbitKind::Escaped) return pt;

  const double cut = cfg.transient_frac() * cfg.tau_end();
  std::vector<double> mag;
  for (const auto& s : r.trajectory)
    if (s.tau >= cut) mag.push_back(std::abs(s.z));

  if (pt.kind == OrbitKind::Converged || is_flat(mag)) {
    pt.values = {std::abs(r.outcome.z_final)};
    return pt;
  }
  auto maxima = detail::local_maxima(mag, 1.0);
  const auto minima = detail::local_maxima(mag, -1.0);
  maxima.insert(maxima.end(), minima.begin(), minima.end());
  std::sort(maxima.begin(), maxima.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::deque<double> extrema;
  for (const auto& p : maxima) {
    extrema.push_back(mag[p.first]);
    if (extrema.size() > kFeigenbaumKeep) extrema.pop_front();
  }
  if (extrema.empty()) {
    pt.values = {std::abs(r.outcome.z_final)};
  } else {
    pt.values.assign(extrema.begin(), extrema.end());
  }
  return pt;
}

}  // namespace

std::vector<FeigenbaumPoint> feigenbaum_scan(const ScanLine& line, const ModeConfig& mode,
                                             int workers) {
  require(line.n_params >= 2, "a scan needs at least two parameters");
  require(line.dir != Complex{} && is_finite(line.dir), "scan direction must be nonzero");
  require(is_finite(line.c0) && std::isfinite(line.s_min) && std::isfinite(line.s_max),
          "scan line must be finite");

  std::vector<FeigenbaumPoint> out(static_cast<std::size_t>(line.n_params));
  const int n_workers = workers > 0 ? workers : default_worker_count();
  detail::parallel_for(out.size(), n_workers, [&](std::size_t k) {
    const double s =
        line.s_min + (line.s_max - line.s_min) * static_cast<double>(k) / (line.n_params - 1);
    const Complex c = line.c0 + s * line.dir;
    FeigenbaumPoint pt;
    try {
      if (const auto* p = std::get_if<DiscreteParams>(&mode)) {
        pt = scan_discrete(c, *p);
      } else {
        pt = scan_dde(c, std::get<DdeConfig>(mode));
      }
    } catch (const Error&) {
      pt.c = c;
      pt.kind = OrbitKind::Undecided;
    }
    pt.s = s;
    out[k] = std::move(pt);
  });
  return out;
}

int count_branches(std::vector<double> values, double tol) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  int branches = 1;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] - values[k - 1] > tol) ++branches;
  return branches;
}

std::vector<RayProbe> ray_frequency_check(double phi, double tau0,
                                          const std::vector<double>& radii,
                                          const DdeConfig& config, int workers) {
  require(std::abs(config.tau0() - tau0) <= 1e-12 * tau0, "config delay differs from tau0");
  const Complex direction = std::polar(1.0, std::arg(hopf_boundary_point(phi, tau0).c_h));
  std::vector<RayProbe> out(radii.size());
  const int n_workers = workers > 0 ? workers : default_worker_count();
  detail::parallel_for(radii.size(), n_workers, [&](std::size_t k) {
    RayProbe probe;
    probe.radius = radii[k];
    probe.c = radii[k] * direction;
    try {
      const TimeSeries ts = time_series(probe.c, config, 1);
      probe.estimate = measure_period(ts, 0.5 * config.tau_end());
    } catch (const Error& e) {
      probe.error = e.code();
    }
    out[k] = probe;
  });
  return out;
}

}  // namespace mdde
