#include "mdde/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mdde/dynamics.hpp"
#include "unit_circle.hpp"

namespace mdde {

Complex cardioid_point(double phi) {
  const Complex u = unit(phi);
  const Complex u2 = unit(2.0 * phi);
  return 0.5 * u - 0.25 * u2;
}

Complex period2_point(double phi) { return 0.25 * unit(phi) - 1.0; }

namespace {

constexpr double kCycleTol = 1e-12;
constexpr double kDistinctTol = 1e-8;
constexpr int kMaxNewton = 100;

// F^n(z) - z and its derivative prod(2 z_k) - 1.
std::pair<Complex, Complex> return_map(Complex z, Complex c, int n) {
  Complex w = z;
  Complex deriv = 1.0;
  for (int k = 0; k < n; ++k) {
    deriv *= 2.0 * w;
    w = map_step(w, c);
  }
  return {w - z, deriv - 1.0};
}

Complex newton_cycle_point(Complex c, int n, Complex z) {
  for (int step = 0; step <= kMaxNewton; ++step) {
    const auto [g, dg] = return_map(z, c, n);
    if (!is_finite(g)) break;
    if (std::abs(g) < kCycleTol) return z;
    if (step == kMaxNewton || dg == Complex{}) break;
    z -= g / dg;
  }
  throw Error(ErrorCode::NoConvergence,
              "Newton iteration for a period-" + std::to_string(n) + " cycle did not converge");
}

CycleData assemble(Complex c, int n, Complex z0) {
  CycleData cd;
  cd.period = n;
  cd.c = c;
  cd.multiplier = 1.0;
  Complex z = z0;
  for (int k = 0; k < n; ++k) {
    cd.points.push_back(z);
    cd.multiplier *= 2.0 * z;
    z = map_step(z, c);
  }
  return cd;
}

bool pairwise_distinct(const std::vector<Complex>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) < kDistinctTol) return false;
  return true;
}

}  // namespace

CycleData find_cycle(Complex c, int n, Complex seed) {
  require(n >= 1 && n <= 3, "cycle period must be 1, 2 or 3");
  require(is_finite(c) && is_finite(seed), "c and seed must be finite");

  Complex start = seed;
  if (n == 2) {
    // Proper 2-cycle points solve z^2 + z + (c + 1) = 0.
    const Complex root = std::sqrt(-3.0 - 4.0 * c);
    const Complex a = 0.5 * (-1.0 + root);
    const Complex b = 0.5 * (-1.0 - root);
    if (std::abs(a - b) < kDistinctTol)
      throw Error(ErrorCode::DegenerateCycle, "2-cycle collides with a fixed point");
    start = std::abs(a - seed) <= std::abs(b - seed) ? a : b;
  }

  const Complex z0 = newton_cycle_point(c, n, start);
  CycleData cd = assemble(c, n, z0);
  if (n > 1 && !pairwise_distinct(cd.points))
    throw Error(ErrorCode::DegenerateCycle,
                "seed converged to a point of lower period than " + std::to_string(n));
  return cd;
}

MultiplierCheck cycle_multiplier_invariants(const CycleData& cycle) {
  require(cycle.period >= 1 && cycle.period <= 3 &&
              cycle.points.size() == static_cast<std::size_t>(cycle.period),
          "cycle must have 1, 2 or 3 points");
  Complex prod = 1.0;
  for (const Complex z : cycle.points) prod *= z;
  const double bound = std::ldexp(1.0, -cycle.period);
  MultiplierCheck out;
  out.modulus = std::abs(prod);
  out.on_boundary = std::abs(out.modulus - bound) < 1e-9;
  return out;
}

double period3_real_center() {
  // F^3(0) = c (c^3 + 2c^2 + c + 1).
  double c = -1.75;
  for (int i = 0; i < 60; ++i) {
    const double f = ((c + 2.0) * c + 1.0) * c + 1.0;
    const double df = (3.0 * c + 4.0) * c + 1.0;
    const double next = c - f / df;
    if (next == c) break;
    c = next;
  }
  return c;
}

namespace {

struct CycleState {
  Complex z;
  Complex c;
};

// Solves F^3_c(z) = z, prod 2 z_k = target for (z, c) by Newton.
bool solve_neutral_cycle(CycleState& s, Complex target) {
  for (int it = 0; it < 50; ++it) {
    Complex w = s.z;
    Complex dw_dz = 1.0;
    Complex dw_dc = 0.0;
    Complex mult = 1.0;
    Complex dmult_dz = 0.0;
    Complex dmult_dc = 0.0;
    for (int k = 0; k < 3; ++k) {
      // Product rule on mult *= 2w before advancing w.
      dmult_dz = dmult_dz * (2.0 * w) + mult * (2.0 * dw_dz);
      dmult_dc = dmult_dc * (2.0 * w) + mult * (2.0 * dw_dc);
      mult *= 2.0 * w;
      dw_dc = 2.0 * w * dw_dc + 1.0;
      dw_dz = 2.0 * w * dw_dz;
      w = map_step(w, s.c);
    }
    const Complex g1 = w - s.z;
    const Complex g2 = mult - target;
    if (!is_finite(g1) || !is_finite(g2)) return false;
    if (std::abs(g1) < 1e-14 && std::abs(g2) < 1e-13) return true;

    const Complex a = dw_dz - 1.0;
    const Complex b = dw_dc;
    const Complex det = a * dmult_dc - b * dmult_dz;
    if (std::abs(det) < 1e-300) return false;
    s.z -= (g1 * dmult_dc - b * g2) / det;
    s.c -= (a * g2 - dmult_dz * g1) / det;
  }
  return false;
}

}  // namespace

std::vector<BoundaryNode> trace_period3_boundary(int samples) {
  require(samples >= 8, "at least 8 samples are required");

  const double center = period3_real_center();
  CycleState s{Complex{}, Complex{center, 0.0}};

  constexpr int kRadialSteps = 64;
  for (int k = 1; k <= kRadialSteps; ++k) {
    const double r = static_cast<double>(k) / kRadialSteps;
    if (!solve_neutral_cycle(s, Complex{r, 0.0}))
      throw ContinuationStall("period-3 continuation stalled on the radial leg", {});
  }

  const int sub = std::max(1, (512 + samples - 1) / samples);
  std::vector<BoundaryNode> nodes;
  std::vector<Complex> partial;
  nodes.push_back({0.0, s.c, s.z});
  partial.push_back(s.c);
  for (int k = 1; k < samples; ++k) {
    for (int j = 1; j <= sub; ++j) {
      const double theta =
          kTwoPi * (static_cast<double>(k - 1) + static_cast<double>(j) / sub) / samples;
      if (!solve_neutral_cycle(s, unit(theta)))
        throw ContinuationStall("period-3 continuation stalled at theta = " +
                                    std::to_string(theta),
                                partial);
    }
    const double theta = kTwoPi * k / samples;
    nodes.push_back({theta, s.c, s.z});
    partial.push_back(s.c);
  }
  return nodes;
}

std::vector<Complex> trace_multiplier_boundary(int n, int samples) {
  require(n >= 1 && n <= 3, "boundary period must be 1, 2 or 3");
  require(samples >= 1, "samples must be positive");
  std::vector<Complex> out;
  if (n == 3) {
    for (const auto& node : trace_period3_boundary(samples)) out.push_back(node.c);
    return out;
  }
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double phi = kTwoPi * k / samples;
    out.push_back(n == 1 ? cardioid_point(phi) : period2_point(phi));
  }
  return out;
}

}  // namespace mdde
