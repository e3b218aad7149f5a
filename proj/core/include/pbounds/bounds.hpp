#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pbounds/band.hpp"
#include "pbounds/complex_core.hpp"
#include "pbounds/dispersion.hpp"
#include "pbounds/report.hpp"

namespace pbounds {

/// Scalar response f on the closed upper half-plane with its high-frequency
/// limit. Built from a DispersionModel or from a polarizability tensor
/// contracted with an incident field.
struct ScalarResponse {
  std::function<Complex(Complex)> eval;
  double f_inf = 1.0;
  std::string name;
  /// Known real poles (ω > 0); checks that need a pole-free band test these
  /// directly instead of relying on grid samples landing near them.
  std::vector<double> poles;

  ScalarResponse(std::function<Complex(Complex)> f, double f_inf, std::string name);
  ScalarResponse(const DispersionModel& model);  // NOLINT: implicit by design
};

/// max |Im f| must not exceed this on a transparency window.
inline constexpr double kTransparencyTol = 1e-10;

struct TransparencyResult {
  /// ω₀²(f(ω₀) − f∞) ≤ ω²(f(ω) − f∞) over all grid pairs ω₀ < ω.
  BoundReport pairs;
  /// f∞ ≤ v′(x) on the x-grid.
  BoundReport derivative;
  /// (x, v′(x)) samples.
  std::vector<Witness> derivative_curve;
};

/// Throws PreconditionError when max |Im f| over 1024 samples exceeds
/// kTransparencyTol·(1 + f∞) or a pole lies in the band.
TransparencyResult transparency_bound(const ScalarResponse& f, const FrequencyBand& band,
                                      int n_grid = 1024, double tol = kDefaultCheckTol);

/// |{x ∈ [x₋, x₊] : |v(x)| < Δ}| ≤ 4Δ/f∞ with v(x) = x f(√x).
BoundReport lossy_level_set_bound(const ScalarResponse& f, const FrequencyBand& band, double delta,
                                  int n_grid = 2048, double tol = kDefaultCheckTol);

struct LossyMaxResult {
  /// (1/4)(ω₊² − ω₋²) f∞ ≤ max |ω² f(ω)|.
  BoundReport v_form;
  /// (1/2)(ω₊ − ω₋) f∞ ≤ max |ω f(ω)|.
  BoundReport vtilde_form;
};

LossyMaxResult lossy_max_bound(const ScalarResponse& f, const FrequencyBand& band,
                               int n_grid = 2048, double tol = kDefaultCheckTol);

/// ω²(Re f(ω) − f∞) non-decreasing on the band: the pair inequality without
/// the transparency precondition. Holds when Im f vanishes near the band.
BoundReport monotone_difference_check(const ScalarResponse& f, const FrequencyBand& band,
                                      int n_grid = 1024, double tol = kDefaultCheckTol);

}  // namespace pbounds
