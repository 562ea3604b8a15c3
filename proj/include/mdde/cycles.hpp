#pragma once

#include <vector>

#include "mdde/types.hpp"

namespace mdde {

/// A periodic orbit z -> z^2 + c of period 1, 2 or 3.
struct CycleData {
  int period = 1;
  std::vector<Complex> points;
  Complex multiplier{};  // prod 2*z_k
  Complex c{};
};

/// Modulus of the product of cycle points (|z|, |y| = |z(z^2+c)|, |x|) and
/// whether it sits on the neutral value 1/2^n.
struct MultiplierCheck {
  double modulus = 0.0;
  bool on_boundary = false;
};

/// One continuation node on a multiplier boundary.
struct BoundaryNode {
  double theta = 0.0;
  Complex c{};
  Complex z{};  // a cycle point at c
};

/// Thrown when continuation cannot follow the boundary; carries what was traced.
class ContinuationStall : public Error {
 public:
  ContinuationStall(const std::string& what, std::vector<Complex> partial)
      : Error(ErrorCode::ContinuationStall, what), partial_(std::move(partial)) {}

  const std::vector<Complex>& partial() const { return partial_; }

 private:
  std::vector<Complex> partial_;
};

/// Boundary of the main cardioid, (1/2)e^{i phi} - (1/4)e^{2 i phi}.
Complex cardioid_point(double phi);

/// Boundary of the period-2 disk, (1/4)e^{i phi} - 1.
Complex period2_point(double phi);

/// Newton on F^n(z) - z. For n = 2 the seed only selects a root of the
/// closed-form quadratic z^2 + z + (c + 1) = 0.
CycleData find_cycle(Complex c, int n, Complex seed);

MultiplierCheck cycle_multiplier_invariants(const CycleData& cycle);

/// n = 1, 2: analytic curves on a uniform phi grid. n = 3: multiplier
/// continuation around the real period-3 window centred near c = -1.7549.
std::vector<Complex> trace_multiplier_boundary(int n, int samples);

/// Period-3 continuation with the cycle point attached to each node.
std::vector<BoundaryNode> trace_period3_boundary(int samples);

/// Real root of c^3 + 2c^2 + c + 1 (F^3(0) = 0 on the real axis).
double period3_real_center();

}  // namespace mdde
