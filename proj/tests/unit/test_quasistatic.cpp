#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "pbounds/analytic_polarizability.hpp"
#include "pbounds/errors.hpp"
#include "pbounds/fd_solver.hpp"
#include "pbounds/scene.hpp"

using namespace pbounds;

namespace {

SceneSpec sphere_scene(int n, double eps = 2.0) {
  SceneSpec s;
  s.box_half_width = 1.0;
  s.grid_n = n;
  s.regions.push_back({SphereShape{Eigen::Vector3d::Zero(), 0.25}, eps});
  return s;
}

}  // namespace

TEST_CASE("sphere polarizability") {
  const Eigen::Matrix3d a = sphere_alpha_inf(0.5, 3.0, 1.0);
  CHECK(a(0, 0) == doctest::Approx(4.0 * kPi * 0.125 * 2.0 / 5.0));
  CHECK(a(0, 1) == 0.0);
  CHECK_THROWS_AS(sphere_alpha_inf(0.5, 1.0, 1.0), DomainError);
}

TEST_CASE("coated sphere matches the interface-condition solve") {
  for (double a : {0.3, 0.8})
    for (Complex es : {Complex(2.0, 0.0), Complex(-0.5, 0.1), Complex(0.25, 0.0)}) {
      const Complex got = coated_sphere_alpha(a, 1.0, 3.0, es, 1.5);
      const Complex ref = oracle::coated_sphere_alpha(a, 1.0, 3.0, es, 1.5);
      CHECK(std::abs(got - ref) < 1e-12 * (1.0 + std::abs(ref)));
    }
  // no core: homogeneous sphere of the shell material
  const Complex es(2.0, 0.3);
  const Complex solid = 4.0 * kPi * 1.5 * (es - 1.5) / (es + 3.0);
  CHECK(std::abs(coated_sphere_alpha(0.0, 1.0, 3.0, es, 1.5) - solid) < 1e-12);
  CHECK_THROWS_AS(coated_sphere_alpha(1.0, 0.5, 3.0, Complex(2.0), 1.0), DomainError);
}

TEST_CASE("coated sphere resonance raises PoleError") {
  // core-free shell: denominator ε_s + 2ε₀ vanishes at ε_s = −2
  CHECK_THROWS_AS(coated_sphere_alpha(0.0, 1.0, 3.0, Complex(-2.0), 1.0), PoleError);
}

TEST_CASE("depolarization factors agree with Carlson's R_D") {
  for (const Eigen::Vector3d& ax : {Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(3, 2, 1),
                                    Eigen::Vector3d(0.2, 1.5, 0.7), Eigen::Vector3d(10, 1, 0.1)}) {
    const Eigen::Vector3d L = depolarization_factors(ax);
    CHECK(L.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(L[0] == doctest::Approx(oracle::depolarization(ax[0], ax[1], ax[2])).epsilon(1e-10));
    CHECK(L[1] == doctest::Approx(oracle::depolarization(ax[1], ax[2], ax[0])).epsilon(1e-10));
    CHECK(L[2] == doctest::Approx(oracle::depolarization(ax[2], ax[0], ax[1])).epsilon(1e-10));
  }
  const Eigen::Vector3d prolate = depolarization_factors(Eigen::Vector3d(4.0, 1.0, 1.0));
  CHECK(prolate[0] == doctest::Approx(oracle::prolate_long_axis(4.0, 1.0)).epsilon(1e-10));
  CHECK(depolarization_factors(Eigen::Vector3d(2, 2, 2))[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("ellipsoid polarizability") {
  const Eigen::Vector3d ax(0.4, 0.3, 0.2);
  const EllipsoidPolarizability e = ellipsoid_alpha(ax, 4.0, 1.0);
  const double V = 4.0 * kPi / 3.0 * ax.prod();
  for (int i = 0; i < 3; ++i) {
    const double L = oracle::depolarization(ax[i], ax[(i + 1) % 3], ax[(i + 2) % 3]);
    CHECK(e.alpha(i, i) == doctest::Approx(V * 3.0 / (1.0 + L * 3.0)).epsilon(1e-10));
  }
  CHECK_FALSE(e.accuracy_warning);
  CHECK(ellipsoid_alpha(Eigen::Vector3d(1e5, 1, 1), 2.0, 1.0).accuracy_warning);
  // equal semiaxes reduce to the sphere
  CHECK(ellipsoid_alpha(Eigen::Vector3d(0.5, 0.5, 0.5), 3.0, 1.0).alpha(2, 2) ==
        doctest::Approx(sphere_alpha_inf(0.5, 3.0, 1.0)(2, 2)).epsilon(1e-12));
}

TEST_CASE("cloak design zeroes the coated-sphere response") {
  const DispersionModel shell(LossyDrude{1.0, 1.0, 0.0});
  const double w0 = design_cloak_frequency(0.5, 1.0, 3.0, shell, 1.0, 2.0, 4.0);
  CHECK(w0 > 2.0);
  CHECK(w0 < 4.0);
  const Complex a0 = coated_sphere_alpha(0.5, 1.0, 3.0, shell, 1.0, w0);
  CHECK(std::abs(a0) / (4.0 * kPi) < 1e-10);
  // ε_s(ω₀) solves the quadratic numerator with ε_c = 3, (a/b)³ = 1/8
  const double es = 1.0 - 1.0 / (w0 * w0);
  const double num = (es - 1.0) * (3.0 + 2.0 * es) + 0.125 * (3.0 - es) * (1.0 + 2.0 * es);
  CHECK(std::abs(num) < 1e-10);
  CHECK_THROWS_AS(design_cloak_frequency(0.5, 1.0, 3.0, shell, 1.0, 3.0, 4.0), DomainError);
}

TEST_CASE("scene validation") {
  SceneSpec s = sphere_scene(32);
  CHECK_NOTHROW(s.validate());
  s.grid_n = 8;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = sphere_scene(32);
  s.regions[0].shape = SphereShape{Eigen::Vector3d::Zero(), 0.7};
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = sphere_scene(16);
  s.regions.push_back({ShellShape{Eigen::Vector3d::Zero(), 0.25, 0.3}, 3.0});
  CHECK_THROWS_AS(s.validate(), RefusalError);
}

TEST_CASE("scene and model JSON parsing") {
  const SceneSpec s = parse_scene_json(R"({"box": 2, "grid": 20, "background_eps": 1.5,
    "regions": [{"shape": {"type": "ellipsoid", "center": [0, 0, 0], "semiaxes": [0.5, 0.4, 0.3]},
                 "material": {"type": "drude", "f_inf": 1, "omega_p": 2, "gamma": 0.1}}]})");
  CHECK(s.grid_n == 20);
  CHECK(s.background_eps == 1.5);
  REQUIRE(s.regions.size() == 1);
  CHECK(std::holds_alternative<EllipsoidShape>(s.regions[0].shape));
  CHECK(std::holds_alternative<DispersionModel>(s.regions[0].material));
  CHECK_THROWS_AS(parse_scene_json("{"), LoadError);
  CHECK_THROWS_AS(parse_scene_json(R"({"box": 1, "grid": 16, "regions": [{"shape": {"type": "cube"}, "material": 2}]})"),
                  DomainError);
  CHECK_THROWS_AS(parse_model_json(R"({"type": "plasma"})"), DomainError);
  const DispersionModel c = parse_model_json(R"({"type": "constant", "value": 2.5})");
  CHECK(c.f_inf() == 2.5);
}

TEST_CASE("empty scene has no induced dipole") {
  SceneSpec s;
  s.grid_n = 16;
  const PotentialGrid g = fd_solve_potential(s, Eigen::Vector3d::UnitX(), 1.0);
  CHECK(g.iterations == 0);
  const DipoleResult d = extract_dipole(g, s);
  CHECK(d.p.norm() == 0.0);
}

TEST_CASE("finite-difference sphere agrees with the closed form") {
  const SceneSpec s = sphere_scene(32);
  const AlphaAssembly a = assemble_alpha(s, 1.0, {});
  const double ref = sphere_alpha_inf(0.25, 2.0, 1.0)(0, 0);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(a.alpha(i, i).real() / ref - 1.0) < 0.02);
  Eigen::Matrix3cd off = a.alpha;
  off.diagonal().setZero();
  CHECK(off.norm() < 1e-3 * ref);
  CHECK(a.max_monopole_ratio < 1e-8);
  CHECK(a.symmetry_deviation < 1e-3);
  CHECK(a.loss_offset_used == 0.0);
}

TEST_CASE("harmonic face averaging is available") {
  FdOptions opt;
  opt.face_average = FdOptions::FaceAverage::harmonic;
  const SceneSpec s = sphere_scene(32);
  const PotentialGrid g = fd_solve_potential(s, Eigen::Vector3d::UnitZ(), 1.0, opt);
  CHECK(g.solver == "cocg");
  const double ref = sphere_alpha_inf(0.25, 2.0, 1.0)(2, 2);
  CHECK(std::abs(extract_dipole(g, s).p[2].real() / ref - 1.0) < 0.05);
}

TEST_CASE("solver converges to the requested residual") {
  const SceneSpec s = sphere_scene(24);
  const PotentialGrid g = fd_solve_potential(s, Eigen::Vector3d::UnitY(), 1.0);
  REQUIRE(!g.residual_history.empty());
  CHECK(g.residual_history.back() <= 1e-10);
  FdOptions tight;
  tight.max_iter = 2;
  CHECK_THROWS_AS(fd_solve_potential(s, Eigen::Vector3d::UnitY(), 1.0, tight), SolverError);
}

TEST_CASE("negative permittivity triggers the loss offset") {
  SceneSpec s = sphere_scene(24);
  s.regions[0].material = DispersionModel(LossyDrude{1.0, 2.0, 0.0});
  const PotentialGrid g = fd_solve_potential(s, Eigen::Vector3d::UnitX(), 1.0);
  CHECK(g.loss_offset_used > 0.0);
}

TEST_CASE("potential export writes raw data and a sidecar") {
  const SceneSpec s = sphere_scene(16);
  const PotentialGrid g = fd_solve_potential(s, Eigen::Vector3d::UnitX(), 1.0);
  const auto stem = std::filesystem::temp_directory_path() / "pbounds_export_test";
  g.export_binary(stem);
  auto bin = stem;
  bin += ".bin";
  auto side = stem;
  side += ".json";
  CHECK(std::filesystem::file_size(bin) == 16u * 16u * 16u * 16u);
  std::ifstream js(side);
  const auto meta = nlohmann::json::parse(js);
  CHECK(meta["dims"][0] == 16);
  CHECK(meta["layout"] == "x-fastest");
  std::filesystem::remove(bin);
  std::filesystem::remove(side);
}

TEST_CASE("monopole quality gate") {
  const SceneSpec s = sphere_scene(16);
  const PotentialGrid g = fd_solve_potential(s, Eigen::Vector3d::UnitX(), 1.0);
  CHECK_NOTHROW(extract_dipole(g, s));
  CHECK_THROWS_AS(extract_dipole(g, s, -1.0), QualityError);
}
