#include "pbounds/complex_core.hpp"

#include <cmath>
#include <limits>

#include "pbounds/errors.hpp"

namespace pbounds {

double branch_arg(Complex z) {
  if (z.imag() == 0.0) return z.real() < 0.0 ? kPi : 0.0;
  double a = std::atan2(z.imag(), z.real());
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

Complex branch_sqrt(Complex z) {
  if (z.imag() == 0.0) {
    // On the real axis: positive root on the cut, i|x|^{1/2} on the negative axis.
    return z.real() >= 0.0 ? Complex(std::sqrt(z.real()), 0.0)
                           : Complex(0.0, std::sqrt(-z.real()));
  }
  // std::sqrt is the principal root (Re ≥ 0); in the lower half-plane our branch
  // has arg/2 ∈ (π/2, π) which is the negated principal root.
  const Complex s = std::sqrt(z);
  return z.imag() > 0.0 ? s : -s;
}

Complex branch_log(Complex z) {
  if (z == Complex(0.0, 0.0)) throw DomainError("branch_log: logarithm of zero");
  return {std::log(std::abs(z)), branch_arg(z)};
}

StolzParams::StolzParams(double t) : theta(t) {
  if (!(t > 0.0 && t < 0.5 * kPi)) throw DomainError("StolzParams: theta must lie in (0, pi/2)");
}

bool in_stolz(Complex z, const StolzParams& p) {
  if (z == Complex(0.0, 0.0)) throw DomainError("in_stolz: z = 0 has no argument");
  const double a = branch_arg(z);
  // a few ulps of slack so that the closed boundary rays are included
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * kPi;
  return a >= p.theta - slack && a <= kPi - p.theta + slack;
}

}  // namespace pbounds
