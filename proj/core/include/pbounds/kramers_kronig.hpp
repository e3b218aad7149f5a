#pragma once

#include <span>
#include <vector>

#include "pbounds/interp.hpp"

namespace pbounds {

struct KramersKronigOptions {
  /// Absolute tolerance of the quadrature over the sampled range.
  double quad_tol = 1e-10;
  /// Half-width of the window around ω where the regularized integrand is
  /// replaced by its limit, in units of the local grid spacing.
  double excision_cells = 2.0;
  /// A tail bound above this is flagged in KramersKronigResult::tail_warning.
  double tail_tol = 1e-6;
  /// Interpolant for Im f between samples. The spline is fourth-order
  /// accurate; the monotone cubic never goes negative but clips resonance
  /// peaks to third order.
  enum class Interpolation { spline, monotone } interpolation = Interpolation::spline;
};

struct KramersKronigResult {
  double value = 0.0;
  double quad_error = 0.0;
  /// Bound on the neglected ∫_{ω_max}^∞ contribution, assuming Im f = O(1/ω³).
  double tail_bound = 0.0;
  bool tail_warning = false;
};

/// Re f(ω) = f∞ + (2/π) P∫₀^∞ ω′ Im f(ω′) / (ω′² − ω²) dω′ from samples of
/// Im f on (0, ω_max]. Im f is interpolated with a cubic (see KramersKronigOptions) and taken
/// linear to zero below the first sample.
class KramersKronig {
 public:
  KramersKronig(std::vector<double> omega, std::vector<double> im_f, double f_inf,
                KramersKronigOptions opt = {});

  /// ω must lie strictly inside the sampled range.
  KramersKronigResult real_part(double omega) const;

  double f_inf() const { return f_inf_; }
  double omega_max() const { return g_.hi(); }

 private:
  CubicHermite g_;
  double f_inf_;
  KramersKronigOptions opt_;
};

double kk_real_part(std::span<const double> omega, std::span<const double> im_f, double f_inf,
                    double omega_eval);

}  // namespace pbounds
