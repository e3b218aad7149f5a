#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "pbounds/band.hpp"
#include "pbounds/polarizability.hpp"
#include "pbounds/report.hpp"

namespace pbounds {

struct EnvelopePoint {
  double omega;
  double value;
  /// Admissible region for f(ω) when f(ω₀) = 0; unset means unbounded.
  std::optional<double> lo;
  std::optional<double> hi;
};

struct EnvelopeResult {
  /// ω ≥ ω₀: f∞(ω² − ω₀²)/ω² ≤ f(ω).
  BoundReport above;
  /// ω ≤ ω₀: f(ω) ≤ −f∞(ω₀² − ω²)/ω².
  BoundReport below;
  /// ±[ω²(α(ω) − α(∞)) − ω₀²(α(ω₀) − α(∞))] ⪰ 0 (sign + for ω ≥ ω₀).
  BoundReport tensor;
  /// Extreme eigenvalues of the signed difference matrices over the grid.
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  /// f(ω₀) / f∞.
  double residual_at_omega0 = 0.0;
  std::vector<EnvelopePoint> curve;
  /// α is not symmetric: the tensor check is restricted to its real
  /// symmetric part, which is what real incident fields see.
  bool reciprocity_warning = false;
  std::string notes;

  bool pass() const { return above.pass && below.pass && tensor.pass; }
};

/// Checks α on a transparency window against the envelope implied by
/// α(ω₀) = 0. Throws PreconditionError when Im f exceeds kTransparencyTol.
EnvelopeResult cloaking_envelope(const PolarizabilityResponse& alpha, const Eigen::Vector3cd& E0,
                                 const FrequencyBand& band, double omega0, int n_grid = 512,
                                 double tol = kDefaultCheckTol);

}  // namespace pbounds
