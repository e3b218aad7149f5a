#include <cmath>
#include <string>

#include "doctest.h"
#include "pbounds/dispersion.hpp"
#include "pbounds/errors.hpp"

using namespace pbounds;

namespace {
const std::string kFixtures = PBOUNDS_FIXTURES_DIR;
}

TEST_CASE("Drude and Lorentz follow their formulas off the axis") {
  const DispersionModel drude(LossyDrude{2.0, 1.5, 0.3});
  const Complex z(0.7, 0.4);
  CHECK(std::abs(drude(z) - 2.0 * (1.0 - 2.25 / (z * z + Complex(0, 0.3) * z))) < 1e-14);
  const DispersionModel lor(LossyLorentz{1.0, {{1.0, 4.0, 0.2}, {0.5, 9.0, 0.1}}});
  const Complex expect = 1.0 - 1.0 / (z * z - 4.0 + Complex(0, 0.2) * z) - 0.5 / (z * z - 9.0 + Complex(0, 0.1) * z);
  CHECK(std::abs(lor(z) - expect) < 1e-14);
  CHECK(drude.f_inf() == 2.0);
  CHECK(std::isinf(drude.static_limit()));
  CHECK(DispersionModel::constant(3.0).static_limit() == 3.0);
}

TEST_CASE("lossless poles raise PoleError") {
  const DispersionModel gl(GeneralizedLorentzLossless{1.0, {{1.0, 4.0}}});
  CHECK(gl.lossless());
  CHECK(gl.real_poles() == std::vector<double>{2.0});
  CHECK_THROWS_AS(gl(2.0), PoleError);
  CHECK_NOTHROW(gl(Complex(2.0, 1e-3)));
  const DispersionModel drude0(LossyDrude{1.0, 1.0, 0.0});
  CHECK_THROWS_AS(drude0(0.0), PoleError);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(DispersionModel(LossyDrude{-1.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(DispersionModel(LossyDrude{1.0, 1.0, -0.1}), DomainError);
  CHECK_THROWS_AS(DispersionModel(GeneralizedLorentzLossless{1.0, {{-1.0, 4.0}}}), DomainError);
  CHECK_THROWS_AS(DispersionModel::constant(0.0), DomainError);
}

TEST_CASE("passivity and symmetry hold for analytic models") {
  const DispersionModel lor(LossyLorentz{1.0, {{1.0, 1.0, 0.2}}});
  const FrequencyBand band(0.1, 5.0);
  const BoundReport p = check_passivity(lor, band, 512);
  CHECK(p.pass);
  CHECK(p.lhs <= 0.0);
  const std::vector<Complex> pts{{0.3, 0.1}, {1.0, 0.0}, {2.0, 3.0}};
  CHECK(check_symmetry(lor, pts).pass);
}

TEST_CASE("passivity check skips lossless poles and notes them") {
  const DispersionModel gl(GeneralizedLorentzLossless{1.0, {{1.0, 1.0}}});
  const BoundReport p = check_passivity(gl, FrequencyBand(0.5, 1.5), 101);
  CHECK(p.pass);
  CHECK(p.notes.find("pole") != std::string::npos);
}

TEST_CASE("tabulated passive data loads and interpolates") {
  const DispersionModel tab = load_tabulated(kFixtures + "/lorentz_passive.csv");
  CHECK(tab.real_axis_only());
  CHECK(tab.f_inf() == 1.0);
  CHECK(std::isnan(tab.static_limit()));
  const Complex exact = 1.0 - 1.0 / (1.0 - 1.0 + Complex(0, 0.2));
  CHECK(std::abs(tab(1.0) - exact) < 1e-9);
  CHECK_THROWS_AS(tab(Complex(1.0, 0.1)), UnsupportedDomainError);
  CHECK_THROWS_AS(tab(10.0), UnsupportedDomainError);
  CHECK(check_passivity(tab, FrequencyBand(0.1, 4.9), 256).pass);
}

TEST_CASE("strict loading rejects Im f < 0 with the offending line") {
  try {
    load_tabulated(kFixtures + "/lorentz_nonpassive.csv");
    FAIL("expected LoadError");
  } catch (const LoadError& e) {
    CHECK(e.line() > 3);
  }
  LoadOptions lenient;
  lenient.enforce_passivity = false;
  const DispersionModel bad = load_tabulated(kFixtures + "/lorentz_nonpassive.csv", lenient);
  const BoundReport p = check_passivity(bad, FrequencyBand(0.5, 2.0), 512);
  CHECK_FALSE(p.pass);
  REQUIRE(!p.witnesses.empty());
  CHECK(p.witnesses.front().omega >= 1.2);
  CHECK(p.witnesses.front().omega <= 1.6);
}

TEST_CASE("duplicate rows and malformed files carry line numbers") {
  try {
    load_tabulated(kFixtures + "/lorentz_duplicate_row.csv");
    FAIL("expected LoadError");
  } catch (const LoadError& e) {
    CHECK(e.line() == 13);
  }
  CHECK_THROWS_AS(parse_tabulated("omega,re_f,im_f\n1,2,0\n2,2,0\n"), LoadError);
  try {
    parse_tabulated("# f_inf=1\nomega,re_f,im_f\n1,2,0\n2,x,0\n");
    FAIL("expected LoadError");
  } catch (const LoadError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(load_tabulated(kFixtures + "/missing.csv"), LoadError);
}

TEST_CASE("two-sided tables are compared row by row") {
  const DispersionModel two = load_tabulated(kFixtures + "/lorentz_two_sided.csv");
  const BoundReport s = check_symmetry(two, {});
  CHECK(s.pass);
  CHECK(s.lhs < 1e-15);
  const DispersionModel broken = parse_tabulated(
      "# f_inf=1\nomega,re_f,im_f\n-2,1,-0.5\n-1,1,-0.1\n1,1,0.1\n2,1,0.2\n");
  CHECK_FALSE(check_symmetry(broken, {}).pass);
}
