#pragma once

#include <cmath>
#include <complex>

namespace pbounds {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Argument of z normalized into [0, 2π). Points on the positive real axis
/// (including a negative-zero imaginary part) are taken as the limit from the
/// upper half-plane and get argument 0.
double branch_arg(Complex z);

/// Square root with branch cut on the positive real axis:
/// √z = |z|^{1/2} e^{i arg z / 2}, arg z ∈ (0, 2π), extended onto the cut by
/// the limit from above, so √x = |x|^{1/2} for x ≥ 0. The result always lies in
/// the closed upper half-plane. branch_sqrt(0) = 0.
Complex branch_sqrt(Complex z);

/// Logarithm on the same branch as branch_sqrt: imaginary part in [0, 2π),
/// positive reals map to real values, negative reals to ln|x| + iπ.
/// Throws DomainError for z = 0.
Complex branch_log(Complex z);

struct StolzParams {
  /// Half-opening of the excluded sectors, 0 < theta < π/2.
  double theta;

  explicit StolzParams(double theta);
};

/// θ ≤ arg z ≤ π − θ (boundary included). Throws DomainError for z = 0.
bool in_stolz(Complex z, const StolzParams& p);

/// True when both components are finite.
inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace pbounds
