#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

#include "pbounds/bounds.hpp"
#include "pbounds/complex_core.hpp"
#include "pbounds/dispersion.hpp"

namespace pbounds {

/// Frequency-dependent 3×3 polarizability α(ω) on the closed upper
/// half-plane, with its real high-frequency limit α(∞).
class PolarizabilityResponse {
 public:
  using Evaluator = std::function<Eigen::Matrix3cd(Complex)>;

  PolarizabilityResponse(std::string name, Evaluator eval, Eigen::Matrix3d alpha_inf);

  Eigen::Matrix3cd eval(Complex omega) const { return eval_(omega); }
  Eigen::Matrix3cd operator()(Complex omega) const { return eval_(omega); }
  const Eigen::Matrix3d& alpha_inf() const { return alpha_inf_; }
  const std::string& name() const { return name_; }

  /// α(ω) = α(∞)(1 − ω₀²/ω²): equality case of the transparency bound.
  static PolarizabilityResponse sharp_drude(const Eigen::Matrix3d& alpha_inf, double omega0);
  /// Frequency-independent α with a separately supplied α(∞).
  static PolarizabilityResponse constant(const Eigen::Matrix3cd& value,
                                         const Eigen::Matrix3d& alpha_inf);
  /// Coated sphere: core radius a, permittivity eps_core; shell up to radius b
  /// with a dispersive permittivity; background eps0. α(∞) uses the shell's f∞.
  static PolarizabilityResponse coated_sphere(double a, double b, double eps_core,
                                              const DispersionModel& shell, double eps0);

 private:
  std::string name_;
  Evaluator eval_;
  Eigen::Matrix3d alpha_inf_;
};

/// f(ω) = α(ω)E₀·conj(E₀) with f∞ = α(∞)E₀·conj(E₀).
ScalarResponse contract(const PolarizabilityResponse& alpha, const Eigen::Vector3cd& E0);

}  // namespace pbounds
