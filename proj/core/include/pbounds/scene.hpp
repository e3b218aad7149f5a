#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pbounds/complex_core.hpp"
#include "pbounds/dispersion.hpp"

namespace pbounds {

struct SphereShape {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;
};

/// a < |x − center| < b.
struct ShellShape {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double inner = 0.0;
  double outer = 0.0;
};

struct EllipsoidShape {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d semiaxes = Eigen::Vector3d::Ones();
};

using Shape = std::variant<SphereShape, ShellShape, EllipsoidShape>;
/// Constant permittivity or a dispersive model evaluated at the solve frequency.
using Material = std::variant<double, DispersionModel>;

struct Region {
  Shape shape;
  Material material;
};

bool shape_contains(const Shape& s, const Eigen::Vector3d& x);
/// max |x|_∞ over the shape.
double shape_extent(const Shape& s);
Complex material_eps(const Material& m, Complex omega);

/// Cubic box [−L, L]³ split into grid_n³ cells. Later regions take precedence
/// where shapes overlap.
struct SceneSpec {
  double box_half_width = 1.0;
  int grid_n = 32;
  double background_eps = 1.0;
  std::vector<Region> regions;

  double spacing() const { return 2.0 * box_half_width / grid_n; }
  /// Radius of the smallest origin-centred ball holding every region.
  double device_radius() const;
  /// DomainError for invalid geometry (grid_n < 16, shapes closer than L/2
  /// to the box, inner ≥ outer); RefusalError when a shell is thinner than
  /// three cells.
  void validate() const;
};

/// Dispersion model from a JSON object: {"type": "drude", "f_inf", "omega_p",
/// "gamma"}, {"type": "lorentz", "f_inf", "terms": [{"A", "xi", "gamma"}]},
/// {"type": "lossless_lorentz", "f_inf", "terms": [{"A", "xi"}]},
/// {"type": "constant", "value"} or {"type": "tabulated", "path"}.
/// Relative table paths resolve against base_dir.
DispersionModel parse_model_json(std::string_view json_text,
                                 const std::filesystem::path& base_dir = {});

/// Scene from JSON: {"box": L, "grid": n, "background_eps": ε₀,
/// "regions": [{"shape": {...}, "material": number | model}]} with shapes
/// {"type": "sphere", "center", "radius"}, {"type": "shell", "center",
/// "inner", "outer"} or {"type": "ellipsoid", "center", "semiaxes"}.
SceneSpec parse_scene_json(std::string_view json_text, const std::filesystem::path& base_dir = {});
SceneSpec load_scene(const std::filesystem::path& path);

}  // namespace pbounds
