#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pbounds/band.hpp"
#include "pbounds/complex_core.hpp"
#include "pbounds/dispersion.hpp"
#include "pbounds/extrapolation.hpp"
#include "pbounds/measure.hpp"

namespace pbounds {

/// u(z) = f(√(−z)): a Stieltjes function, analytic off ℝ⁻ and positive on ℝ⁺.
/// Throws DomainError on the cut (z < 0).
Complex stieltjes_u(const DispersionModel& f, Complex z);

/// v(z) = z f(√z): Herglotz, analytic off ℝ⁺, negative on ℝ⁻, linear
/// coefficient f∞. On the cut the value is the limit from above.
Complex herglotz_v(const DispersionModel& f, Complex z);

/// ṽ(z) = z f(z) on the closed upper half-plane.
Complex herglotz_vtilde(const DispersionModel& f, Complex z);

/// h_m(z) = ∫ dm(ξ)/(ξ − z). Real z is allowed off the support and, for a
/// uniform density, in the interior of its interval (limit from above).
/// Throws SingularEvaluationError otherwise.
Complex h_measure(const Measure& m, Complex z);

/// v_m(z) = h_m(v(z)).
Complex compose_vm(const Measure& m, const DispersionModel& f, Complex z);

using HerglotzEvaluator = std::function<Complex(Complex)>;

struct SumRuleOptions {
  /// Decreasing offsets y_k used for the limit y → 0⁺.
  std::vector<double> y_seq{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  /// Absolute tolerance of each quadrature.
  double quad_tol = 1e-10;
  /// Pass threshold on the slack.
  double tol = 1e-6;
  /// Samples of Re v(x + iy) used to locate near-singular points.
  int scan_points = 2049;
};

struct SumRuleReport {
  FrequencyBand band;
  std::string measure_desc;
  double integral_value = 0.0;
  double a_minus1 = 0.0;
  double b_minus1 = 0.0;
  double rhs_bound = 0.0;
  double slack = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::vector<double> y_sequence_used;
  std::vector<double> values_per_y;
  double extrapolation_error_estimate = 0.0;
  double extrapolation_order = 1.0;
  /// False when the per-y values are not monotone (warning).
  bool extrapolation_monotone = true;
  std::string notes;
};

/// lim_{y→0⁺} (1/π) ∫_{x₋}^{x₊} Im v_m(x + iy) dx, compared against
/// 1/f∞ − m({0})/f(0).
SumRuleReport sum_rule_integral(const DispersionModel& f, const Measure& m,
                                const FrequencyBand& band, const SumRuleOptions& opt = {});

struct DiracScanResult {
  double xi_star = 0.0;
  double value = 0.0;
  SumRuleReport report;
  /// (ξ, value) on the coarse grid.
  std::vector<std::pair<double, double>> grid;
};

/// sup over ξ ∈ [−Δ, Δ] of the Dirac sum-rule value: coarse grid plus
/// golden-section refinement around the best cell, ties toward smaller |ξ|.
/// threads = 0 uses the library default.
DiracScanResult dirac_sup_scan(const DispersionModel& f, const FrequencyBand& band, double delta,
                               int n_grid = 512, const SumRuleOptions& opt = {},
                               unsigned threads = 0);

struct ExtractOptions {
  std::vector<double> y_seq{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double quad_tol = 1e-10;
  int scan_points = 4097;
};

/// Stieltjes inversion: (m([a,b]) + m((a,b)))/2 from lim (1/π)∫_a^b Im h(x+iy) dx.
LimitEstimate extract_measure_mass(const HerglotzEvaluator& h, double a, double b,
                                   const ExtractOptions& opt = {});

struct HerglotzCoefficients {
  double alpha;
  double beta;
  double alpha_error;
};

/// α = lim h(iy)/(iy) (extrapolated over y = 10²…10⁸), β = Re h(i).
/// Throws ExtrapolationError when the ratio does not settle.
HerglotzCoefficients herglotz_coefficients(const HerglotzEvaluator& h);

}  // namespace pbounds
