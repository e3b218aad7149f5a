#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pbounds/complex_core.hpp"

namespace pbounds {

struct Atom {
  double position;
  double mass;
};

/// Non-negative density on [lo, hi]: either a constant height (closed-form
/// Cauchy transform) or an arbitrary callable integrated numerically.
class Density {
 public:
  static Density uniform(double lo, double hi, double height);
  static Density callable(double lo, double hi, std::function<double(double)> rho,
                          std::string label = "density");

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool is_uniform() const { return !rho_; }
  double height() const { return height_; }
  double operator()(double xi) const;
  double total() const;
  const std::string& label() const { return label_; }

 private:
  Density(double lo, double hi, double height, std::function<double(double)> rho, std::string label);
  double lo_, hi_, height_;
  std::function<double(double)> rho_;
  std::string label_;
};

/// Positive Borel measure: finitely many atoms plus at most one density piece.
class Measure {
 public:
  Measure(std::vector<Atom> atoms, std::optional<Density> density = std::nullopt);

  static Measure dirac(double xi, double mass = 1.0);
  /// Normalized uniform measure dξ/(2Δ) on [−Δ, Δ].
  static Measure uniform(double delta);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<Density>& density() const { return density_; }

  double total_mass() const;
  /// Mass of atoms within |position − x| < tol.
  double atom_mass_at(double x, double tol = 1e-12) const;
  double mass_at_zero() const { return atom_mass_at(0.0); }
  double support_lo() const;
  double support_hi() const;
  /// Support in [−Δ, Δ] and total mass 1 (within tol).
  bool in_M_delta(double delta, double tol = 1e-12) const;
  /// Atom positions and density endpoints: where h_m is singular on ℝ.
  std::vector<double> critical_points() const;
  std::string describe() const;

 private:
  std::vector<Atom> atoms_;
  std::optional<Density> density_;
};

/// Herglotz representation data h(z) = αz + β + ∫ (1/(ξ − z) − ξ/(1 + ξ²)) dm(ξ).
struct HerglotzTriple {
  double alpha = 0.0;
  double beta = 0.0;
  Measure measure = Measure({});
  /// β − ∫ ξ dm/(1 + ξ²), defined when that integral converges (always for
  /// the finite measures represented here).
  std::optional<double> gamma_shift;

  HerglotzTriple(double alpha, double beta, Measure m);
  Complex operator()(Complex z) const;
};

}  // namespace pbounds
