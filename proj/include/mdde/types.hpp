#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace mdde {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class ErrorCode {
  InvalidArgument = 1,
  NoConvergence,
  DegenerateCycle,
  ContinuationStall,
  InconclusiveWinding,
  DivisionByZeroRay,
  TooFewPeaks,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// z*z written out; conj(sq(z)) == sq(conj(z)) bit for bit.
inline Complex sq(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  return {x * x - y * y, 2.0 * x * y};
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace mdde
