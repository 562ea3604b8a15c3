#include "mdde/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "peaks.hpp"

namespace mdde {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateCycle: return "DegenerateCycle";
    case ErrorCode::ContinuationStall: return "ContinuationStall";
    case ErrorCode::InconclusiveWinding: return "InconclusiveWinding";
    case ErrorCode::DivisionByZeroRay: return "DivisionByZeroRay";
    case ErrorCode::TooFewPeaks: return "TooFewPeaks";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

const char* to_string(OrbitKind kind) noexcept {
  switch (kind) {
    case OrbitKind::Escaped: return "Escaped";
    case OrbitKind::Converged: return "Converged";
    case OrbitKind::Oscillating: return "Oscillating";
    case OrbitKind::Undecided: return "Undecided";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// DdeConfig

DdeConfig::DdeConfig(double tau0, double dt, double tau_end, double escape_radius,
                     double conv_tol, double window, double transient_frac)
    : tau0_(tau0),
      dt_(dt),
      tau_end_(tau_end),
      escape_radius_(escape_radius),
      conv_tol_(conv_tol),
      window_(window),
      transient_frac_(transient_frac) {
  require(std::isfinite(tau0) && tau0 > 0.0, "tau0 must be a positive finite number");
  require(std::isfinite(dt) && dt > 0.0, "dt must be a positive finite number");
  require(std::isfinite(tau_end) && tau_end > 0.0, "tau_end must be positive");
  require(std::isfinite(escape_radius) && escape_radius > 0.0,
          "escape_radius must be positive");
  require(std::isfinite(conv_tol) && conv_tol > 0.0, "conv_tol must be positive");
  require(std::isfinite(window) && window > 0.0, "window must be positive");
  require(transient_frac >= 0.0 && transient_frac < 1.0,
          "transient_frac must lie in [0, 1)");
  require(tau0 / dt < 1e9, "dt too small for tau0");

  delay_steps_ = std::max(4, static_cast<int>(std::llround(tau0 / dt)));
  dt_ = tau0 / delay_steps_;

  require(tau_end >= tau0 + window, "tau_end must be at least tau0 + window");
  total_steps_ = static_cast<long long>(std::ceil(tau_end / dt_ - 1e-9));
}

DdeConfig DdeConfig::with_defaults(double tau0, double tau_end) {
  return DdeConfig(tau0, tau0 / 200.0, tau_end, 10.0, 1e-6, 10.0 * tau0, 0.5);
}

DdeConfig DdeConfig::with_tau_end(double tau_end) const {
  return DdeConfig(tau0_, dt_, tau_end, escape_radius_, conv_tol_, window_,
                   transient_frac_);
}

DdeConfig DdeConfig::with_window(double window) const {
  return DdeConfig(tau0_, dt_, tau_end_, escape_radius_, conv_tol_, window,
                   transient_frac_);
}

// ---------------------------------------------------------------------------
// HistoryBuffer

HistoryBuffer::HistoryBuffer(double dt, int delay_steps)
    : dt_(dt),
      delay_steps_(delay_steps),
      z_(static_cast<std::size_t>(delay_steps) + 2),
      dz_(static_cast<std::size_t>(delay_steps) + 2) {
  require(dt > 0.0 && delay_steps >= 1, "invalid history geometry");
}

std::size_t HistoryBuffer::slot(long long k) const {
  return static_cast<std::size_t>(k % static_cast<long long>(z_.size()));
}

void HistoryBuffer::push(long long node, Complex z, Complex dz) {
  require(node == newest_ + 1, "history nodes must be pushed consecutively");
  newest_ = node;
  z_[slot(node)] = z;
  dz_[slot(node)] = dz;
}

Complex HistoryBuffer::at_node(long long k) const {
  if (k < 0) return {};
  require(k <= newest_ && newest_ - k < static_cast<long long>(z_.size()),
          "history node out of range");
  return z_[slot(k)];
}

Complex HistoryBuffer::derivative_at_node(long long k) const {
  if (k < 0) return {};
  require(k <= newest_ && newest_ - k < static_cast<long long>(z_.size()),
          "history node out of range");
  return dz_[slot(k)];
}

Complex HistoryBuffer::midpoint(long long k) const {
  // [k, k+1] with k < 0 lies inside the zero initial history.
  if (k < 0) return {};
  const Complex z0 = at_node(k);
  const Complex z1 = at_node(k + 1);
  const Complex d0 = derivative_at_node(k);
  const Complex d1 = derivative_at_node(k + 1);
  return 0.5 * (z0 + z1) + (dt_ / 8.0) * (d0 - d1);
}

Complex HistoryBuffer::query(double q) const {
  require(newest_ >= 0, "history is empty");
  const double lo = now() - (delay_steps_ + 1) * dt_;
  require(q >= lo - 1e-9 * dt_ && q <= now() + 1e-9 * dt_,
          "history query outside the stored span");
  if (q <= 0.0) return {};

  const double pos = q / dt_;
  const double node = std::round(pos);
  if (std::abs(pos - node) < 1e-9) return at_node(static_cast<long long>(node));

  auto k = static_cast<long long>(std::floor(pos));
  k = std::min(k, newest_ - 1);
  const double s = pos - static_cast<double>(k);
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * at_node(k) + (h10 * dt_) * derivative_at_node(k) +
         h01 * at_node(k + 1) + (h11 * dt_) * derivative_at_node(k + 1);
}

// ---------------------------------------------------------------------------
// Discrete recurrence

Complex map_step(Complex z, Complex c) { return sq(z) + c; }

namespace {

constexpr int kSettleWindow = 16;

double stationary_residual(Complex z, Complex c) {
  return std::abs(sq(z) - z + c);
}

}  // namespace

OrbitOutcome iterate_orbit(Complex c, const DiscreteParams& params) {
  require(params.max_iter >= 1, "max_iter must be at least 1");
  require(params.escape_radius >= 2.0, "escape_radius must be at least 2");
  require(params.conv_tol > 0.0, "conv_tol must be positive");
  require(is_finite(c), "c must be finite");

  std::vector<Complex> tail(kSettleWindow);
  Complex z{};
  tail[0] = z;
  for (int k = 1; k <= params.max_iter; ++k) {
    z = map_step(z, c);
    tail[k % kSettleWindow] = z;
    const double r = std::abs(z);
    if (!(r <= params.escape_radius)) {
      OrbitOutcome out;
      out.kind = OrbitKind::Escaped;
      out.z_final = z;
      out.escape_time = static_cast<double>(k);
      out.non_finite = !is_finite(z);
      return out;
    }
  }

  const int filled = std::min(params.max_iter + 1, kSettleWindow);
  double spread = 0.0;
  double peak = 0.0;
  for (int i = 0; i < filled; ++i) {
    spread = std::max(spread, std::abs(tail[i] - z));
    peak = std::max(peak, std::abs(tail[i]));
  }

  OrbitOutcome out;
  out.z_final = z;
  if (spread < params.conv_tol) {
    out.kind = OrbitKind::Converged;
    out.residual = stationary_residual(z, c);
  } else {
    out.kind = OrbitKind::Oscillating;
    out.amplitude = peak;
  }
  return out;
}

OrbitOutcome iterate_orbit(Complex c, int max_iter, double escape_radius) {
  DiscreteParams p;
  p.max_iter = max_iter;
  p.escape_radius = escape_radius;
  return iterate_orbit(c, p);
}

std::vector<Complex> discrete_orbit(Complex c, int max_iter, double escape_radius) {
  require(max_iter >= 1, "max_iter must be at least 1");
  std::vector<Complex> orbit{Complex{}};
  Complex z{};
  for (int k = 1; k <= max_iter; ++k) {
    z = map_step(z, c);
    orbit.push_back(z);
    if (!(std::abs(z) <= escape_radius)) break;
  }
  return orbit;
}

// ---------------------------------------------------------------------------
// Delay equation

namespace {

struct Recorder {
  Trajectory* strided = nullptr;
  int stride = 1;
  Trajectory window;
  long long window_start = 0;
};

inline Complex rhs(Complex z, Complex delayed, Complex c) {
  return sq(delayed) - z + c;
}

OrbitOutcome run_dde(Complex c, const DdeConfig& cfg, Recorder& rec) {
  require(is_finite(c), "c must be finite");
  const double h = cfg.dt();
  const double half = 0.5 * h;
  const double sixth = h / 6.0;
  const long long delay = cfg.delay_steps();
  const long long steps = cfg.total_steps();
  const double radius2 = cfg.escape_radius() * cfg.escape_radius();

  const auto window_steps = static_cast<long long>(std::ceil(cfg.window() / h - 1e-9));
  rec.window_start = std::max<long long>(0, steps - window_steps);
  rec.window.reserve(static_cast<std::size_t>(steps - rec.window_start + 1));

  HistoryBuffer hist(h, cfg.delay_steps());
  Complex z{};
  for (long long n = 0;; ++n) {
    const Complex k1 = rhs(z, hist.at_node(n - delay), c);
    hist.push(n, z, k1);

    const double tau = static_cast<double>(n) * h;
    const bool escaped = !(std::norm(z) <= radius2);
    if (rec.strided && n % rec.stride == 0) {
      rec.strided->push_back({tau, z});
    }
    if (n >= rec.window_start || escaped) rec.window.push_back({tau, z});
    if (escaped || n == steps) break;

    const Complex mid = hist.midpoint(n - delay);
    const Complex next = hist.at_node(n - delay + 1);
    const Complex k2 = rhs(z + half * k1, mid, c);
    const Complex k3 = rhs(z + half * k2, mid, c);
    const Complex k4 = rhs(z + h * k3, next, c);
    z = z + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return classify_trajectory(rec.window, c, cfg);
}

}  // namespace

DdeResult integrate_dde(Complex c, const DdeConfig& config, int sample_stride) {
  require(sample_stride >= 1, "sample_stride must be at least 1");
  DdeResult result;
  Recorder rec;
  rec.strided = &result.trajectory;
  rec.stride = sample_stride;
  result.outcome = run_dde(c, config, rec);
  return result;
}

OrbitOutcome classify_dde(Complex c, const DdeConfig& config) {
  Recorder rec;
  return run_dde(c, config, rec);
}

OrbitOutcome classify_trajectory(const Trajectory& traj, Complex c,
                                 const DdeConfig& config) {
  OrbitOutcome out;
  const double radius2 = config.escape_radius() * config.escape_radius();
  for (const auto& s : traj) {
    if (!(std::norm(s.z) <= radius2)) {
      out.kind = OrbitKind::Escaped;
      out.z_final = s.z;
      out.escape_time = s.tau;
      out.non_finite = !is_finite(s.z);
      return out;
    }
  }
  if (traj.empty()) return out;

  const double t_end = traj.back().tau;
  const Complex z_end = traj.back().z;
  out.z_final = z_end;
  const double t_start = t_end - config.window() - 1e-9 * config.dt();
  auto first = std::find_if(traj.begin(), traj.end(),
                            [&](const TrajectorySample& s) { return s.tau >= t_start; });

  double drift = 0.0;
  double peak = 0.0;
  for (auto it = first; it != traj.end(); ++it) {
    drift = std::max(drift, std::abs(it->z - z_end));
    peak = std::max(peak, std::abs(it->z));
  }

  const double residual = stationary_residual(z_end, c);
  if (drift < config.conv_tol() && residual < 10.0 * config.conv_tol()) {
    out.kind = OrbitKind::Converged;
    out.residual = residual;
    return out;
  }

  std::vector<double> mags;
  for (auto it = first; it != traj.end(); ++it) mags.push_back(std::abs(it->z));
  double max_peak = 0.0;
  double min_peak = INFINITY;
  int n_peaks = 0;
  for (const auto& p : detail::local_maxima(mags, 1.0)) {
    ++n_peaks;
    max_peak = std::max(max_peak, mags[p.first]);
    min_peak = std::min(min_peak, mags[p.first]);
  }
  if (n_peaks >= 3 && max_peak > 0.0 && (max_peak - min_peak) <= 0.1 * max_peak) {
    out.kind = OrbitKind::Oscillating;
    out.amplitude = peak;
  }
  return out;
}

}  // namespace mdde
