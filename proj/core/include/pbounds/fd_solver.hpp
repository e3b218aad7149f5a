#pragma once

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "pbounds/complex_core.hpp"
#include "pbounds/scene.hpp"

namespace pbounds {

struct FdOptions {
  /// Stop when ‖b − AV‖ ≤ rel_tol·‖b‖.
  double rel_tol = 1e-10;
  int max_iter = 20000;
  /// Loss offset δ/ε₀ added to lossless region cells when some region has a
  /// non-positive real permittivity (the operator is then indefinite).
  double loss_offset = 1e-6;
  /// Face permittivities. subcell: the dual cell of each face that straddles
  /// an interface is sampled on a subcell_samples³ lattice and gets the
  /// tensor arithmetic·(I − nnᵀ) + harmonic·nnᵀ, with n the interface normal
  /// estimated from the samples. harmonic: harmonic mean of the two
  /// cell-centre values, no cross terms.
  enum class FaceAverage { subcell, harmonic } face_average = FaceAverage::subcell;
  int subcell_samples = 16;
};

/// Scattered potential V_s at the cell centres of a SceneSpec grid; the total
/// potential is V = −E₀·x + V_s. Cell (i, j, k) has centre
/// (−L + (i + ½)h, −L + (j + ½)h, −L + (k + ½)h) and index i + n(j + nk).
struct PotentialGrid {
  int n = 0;
  double half_width = 0.0;
  double spacing = 0.0;
  double background_eps = 1.0;
  Complex omega;
  Eigen::Vector3d E0 = Eigen::Vector3d::Zero();
  /// Cell-centre permittivity.
  std::vector<Complex> eps;
  /// Face permittivity rows. Faces normal to axis a are indexed by
  /// face_index(a, i, j, k) with the a-th coordinate in [0, n]; face m lies
  /// between cells m − 1 and m. face_eps[a][0] is ε_aa and face_eps[a][1],
  /// face_eps[a][2] are ε_{a,a+1}, ε_{a,a+2} (axes mod 3), which vanish away
  /// from interfaces.
  std::array<std::array<std::vector<Complex>, 3>, 3> face_eps;
  /// "cocg" for a symmetric operator, "bicgstab" when cross terms are present.
  std::string solver;
  std::vector<Complex> vs;
  int iterations = 0;
  std::vector<double> residual_history;
  /// δ actually added (0 when not needed).
  double loss_offset_used = 0.0;

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n) *
                                             (static_cast<std::size_t>(j) +
                                              static_cast<std::size_t>(n) * k);
  }
  Eigen::Vector3d centre(int i, int j, int k) const;
  std::size_t face_index(int axis, int i, int j, int k) const;

  /// Writes <stem>.bin (little-endian float64 pairs re, im of V_s, x fastest)
  /// and <stem>.json (dims, spacing, origin, units).
  void export_binary(const std::filesystem::path& stem) const;
};

/// Cell-centred finite volumes for ∇·(ε∇V_s) = ∇·((ε − ε₀)E₀) with
/// averaged face permittivities (FdOptions::face_average) and V_s = 0 on the box, solved by
/// Jacobi-preconditioned COCG. Throws SolverError with the residual history
/// when max_iter is reached.
PotentialGrid fd_solve_potential(const SceneSpec& scene, const Eigen::Vector3d& E0, Complex omega,
                                 const FdOptions& opt = {});

struct DipoleResult {
  Eigen::Vector3cd p = Eigen::Vector3cd::Zero();
  Complex Q = 0.0;
  /// p / |E₀|: the column of α along E₀ for a unit axis field.
  Eigen::Vector3cd alpha_column = Eigen::Vector3cd::Zero();
  /// |Q| / (‖p‖ / R) with R the radius of the flux surface.
  double monopole_ratio = 0.0;
  double surface_radius = 0.0;
};

/// p = ∫(ε − ε₀)(E₀ − ∇V_s) on the face-staggered grid; Q = flux of −ε₀∇V_s
/// through the cell faces of a voxelized sphere between the device and the
/// box. Throws QualityError when monopole_ratio exceeds monopole_tol.
DipoleResult extract_dipole(const PotentialGrid& grid, const SceneSpec& scene,
                            double monopole_tol = 1e-2);

struct AlphaAssembly {
  Eigen::Matrix3cd alpha = Eigen::Matrix3cd::Zero();
  /// ‖α − αᵀ‖ / ‖α‖.
  double symmetry_deviation = 0.0;
  double max_monopole_ratio = 0.0;
  std::array<int, 3> iterations{};
  double loss_offset_used = 0.0;
};

/// Three solves with E₀ = e₁, e₂, e₃ (run concurrently; threads = 0 uses the
/// library default).
AlphaAssembly assemble_alpha(const SceneSpec& scene, Complex omega, const FdOptions& opt = {},
                             unsigned threads = 0);

}  // namespace pbounds
