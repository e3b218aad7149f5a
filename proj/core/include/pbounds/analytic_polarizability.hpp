#pragma once

#include <Eigen/Core>

#include "pbounds/complex_core.hpp"
#include "pbounds/dispersion.hpp"

namespace pbounds {

/// 4πR³ε₀(ε − ε₀)/(ε + 2ε₀)·I. Requires ε > ε₀ > 0.
Eigen::Matrix3d sphere_alpha_inf(double R, double eps, double eps0);

/// α = 4πε₀b³·numerator/denominator for the coated sphere.
struct CoatedSphereTerms {
  Complex numerator;
  Complex denominator;
};

CoatedSphereTerms coated_sphere_terms(double a, double b, double eps_core, Complex eps_shell,
                                      double eps0);

/// Scalar α of a core (radius a) with a shell (radius b); 0 ≤ a < b. Throws
/// PoleError at a resonance of the denominator.
Complex coated_sphere_alpha(double a, double b, double eps_core, Complex eps_shell, double eps0);
Complex coated_sphere_alpha(double a, double b, double eps_core, const DispersionModel& shell,
                            double eps0, Complex omega);

/// L_i = (a₁a₂a₃/2) ∫₀^∞ ds / ((s + a_i²) √((s + a₁²)(s + a₂²)(s + a₃²))).
Eigen::Vector3d depolarization_factors(const Eigen::Vector3d& semiaxes);

struct EllipsoidPolarizability {
  Eigen::Matrix3d alpha;
  Eigen::Vector3d depolarization;
  /// Aspect ratio above 1e4.
  bool accuracy_warning = false;
};

/// α_ii = V ε₀(ε − ε₀)/(ε₀ + L_i(ε − ε₀)), V = 4πa₁a₂a₃/3.
EllipsoidPolarizability ellipsoid_alpha(const Eigen::Vector3d& semiaxes, double eps, double eps0);

/// Frequency in [lo, hi] where the coated-sphere α vanishes (Re α for lossy
/// shells): bisection on a sign change, then secant steps to 1e-12 relative.
double design_cloak_frequency(double a, double b, double eps_core, const DispersionModel& shell,
                              double eps0, double lo, double hi);

}  // namespace pbounds
