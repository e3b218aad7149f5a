#pragma once

#include <span>

namespace pbounds {

/// Result of extrapolating a sequence F(h_k) to h → 0⁺.
struct LimitEstimate {
  double value = 0.0;
  /// Difference between the last two extrapolants (or the last raw step when
  /// only two samples are available).
  double error_estimate = 0.0;
  /// Empirical order p in F(h) ≈ F(0) + c h^p used for the final step.
  double order = 1.0;
  /// False when successive differences change sign; the estimate is then the
  /// order-1 Richardson value and should be treated as a warning.
  bool monotone = true;
};

/// Richardson extrapolation of values[k] = F(h[k]) with h strictly decreasing
/// and positive. The order is detected from the ratio of the last two
/// differences, clamped to [0.5, 4], and defaults to 1 when the differences
/// are at rounding level or change sign.
LimitEstimate extrapolate_to_zero(std::span<const double> h, std::span<const double> values);

}  // namespace pbounds
