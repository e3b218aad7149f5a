#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pbounds/errors.hpp"
#include "pbounds/herglotz.hpp"

using namespace pbounds;

namespace {
const FrequencyBand kBand = FrequencyBand::from_squared(0.25, 2.25);
const DispersionModel kDrude0(LossyDrude{1.0, 1.0, 0.0});
const DispersionModel kLorentz(LossyLorentz{1.0, {{1.0, 1.0, 0.2}}});
}  // namespace

TEST_CASE("u, v and v-tilde transforms") {
  const DispersionModel drude(LossyDrude{1.0, 1.0, 0.5});
  for (double x : {0.1, 1.0, 7.0}) {
    const Complex u = stieltjes_u(drude, x);
    CHECK(u.real() > 0.0);
    CHECK(std::abs(u.imag()) < 1e-14);
  }
  CHECK_THROWS_AS(stieltjes_u(drude, -1.0), DomainError);
  const Complex z(0.3, 0.8);
  CHECK(std::abs(herglotz_v(kDrude0, z) - (z - 1.0)) < 1e-14);
  for (double re = -3.0; re <= 3.0; re += 0.5)
    for (double im : {1e-3, 0.1, 2.0}) {
      const Complex w(re, im);
      CHECK(herglotz_v(kLorentz, w).imag() >= 0.0);
      CHECK(herglotz_vtilde(kLorentz, w).imag() >= 0.0);
    }
}

TEST_CASE("h_m of a uniform density matches direct quadrature") {
  const Measure m = Measure::uniform(0.5);
  for (Complex z : {Complex(0.1, 0.05), Complex(-2.0, 0.3), Complex(0.49, 1.0)}) {
    const Complex direct = oracle::simpson([&](double xi) { return 1.0 / (xi - z); }, -0.5, 0.5, 20000);
    CHECK(std::abs(h_measure(m, z) - direct) < 1e-9);
  }
  // inside the support on the axis: limit from above, Im = π × density
  CHECK(h_measure(m, 0.2).imag() == doctest::Approx(kPi).epsilon(1e-12));
  CHECK_THROWS_AS(h_measure(m, 0.5), SingularEvaluationError);
  CHECK_THROWS_AS(h_measure(Measure::dirac(0.3), 0.3), SingularEvaluationError);
  CHECK(std::abs(h_measure(Measure::dirac(0.3, 2.0), 1.3) - (-2.0)) < 1e-15);
}

TEST_CASE("Herglotz coefficients of v for a lossless Drude model") {
  const auto c = herglotz_coefficients([](Complex z) { return herglotz_v(kDrude0, z); });
  CHECK(c.alpha == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c.beta == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS(herglotz_coefficients([](Complex z) { return Complex(0.0, -1.0) * z * z; }), ExtrapolationError);
}

TEST_CASE("measure extraction recovers atoms") {
  // v(z) = z − 1.5 − 6/(z − 4): a single atom of mass A·ξ = 6 at ξ = 4
  const DispersionModel gl(GeneralizedLorentzLossless{1.0, {{1.5, 4.0}}});
  const auto mass = extract_measure_mass([&](Complex z) { return herglotz_v(gl, z); }, 3.0, 5.0);
  CHECK(mass.value == doctest::Approx(6.0).epsilon(1e-2));
  const auto half = extract_measure_mass([](Complex z) { return 1.0 / (1.0 - z); }, 1.0, 2.0);
  CHECK(std::abs(half.value - 0.5) < 1e-3);
  const auto total = extract_measure_mass(
      [](Complex z) { return h_measure(Measure::uniform(0.5), z); }, -1.0, 1.0);
  CHECK(std::abs(total.value - 1.0) < 1e-6);
}

TEST_CASE("sum rule saturates for lossless Drude with a Dirac at zero") {
  const SumRuleReport r = sum_rule_integral(kDrude0, Measure::dirac(0.0), kBand);
  CHECK(std::abs(r.integral_value - 1.0) < 1e-4);
  CHECK(r.a_minus1 == 0.0);
  CHECK(r.rhs_bound == doctest::Approx(1.0));
  CHECK(r.pass);
  CHECK(r.y_sequence_used.size() == 6);
}

TEST_CASE("uniform-measure sum rule matches high-precision quadrature") {
  struct Case {
    DispersionModel f;
    double expected;
  };
  // tests/oracles/sum_rule_uniform.py
  const Case cases[] = {
      {DispersionModel(LossyDrude{1.0, 1.0, 0.1}), 0.927867278934631},
      {DispersionModel(LossyDrude{1.0, 1.0, 1.0}), 0.558030144601245},
      {kLorentz, 0.366148401256475},
  };
  for (const Case& c : cases) {
    const SumRuleReport r = sum_rule_integral(c.f, Measure::uniform(0.5), kBand);
    CHECK(r.integral_value == doctest::Approx(c.expected).epsilon(1e-6));
    CHECK(r.pass);
  }
  // lossless: (1/(2Δ))·|{x : |v(x)| < Δ}| with v(x) = x + x/(4 − x)
  const DispersionModel gl(GeneralizedLorentzLossless{1.0, {{1.0, 4.0}}});
  const double x_star = 0.5 * (5.5 - std::sqrt(5.5 * 5.5 - 8.0));
  const SumRuleReport r = sum_rule_integral(gl, Measure::uniform(0.5), kBand);
  CHECK(r.integral_value == doctest::Approx(x_star - 0.25).epsilon(1e-6));
}

TEST_CASE("Dirac sum rule at fixed positions and the scan supremum") {
  const SumRuleReport d0 = sum_rule_integral(kLorentz, Measure::dirac(0.0), kBand);
  CHECK(d0.integral_value == doctest::Approx(0.377907467311721).epsilon(1e-6));
  const SumRuleReport d1 = sum_rule_integral(kLorentz, Measure::dirac(0.25), kBand);
  CHECK(d1.integral_value == doctest::Approx(0.397744453459056).epsilon(1e-6));
  const DiracScanResult scan = dirac_sup_scan(kLorentz, kBand, 0.5, 128);
  CHECK(scan.value >= d1.integral_value - 1e-8);
  CHECK(scan.value <= 1.0 + 1e-6);
  CHECK(std::abs(scan.xi_star) <= 0.5);
  CHECK(scan.grid.size() == 128);
}

TEST_CASE("off-support Dirac gives zero and the rhs accounts for m({0})") {
  const DispersionModel c2 = DispersionModel::constant(2.0);
  const SumRuleReport r = sum_rule_integral(c2, Measure::dirac(0.0), kBand);
  CHECK(std::abs(r.integral_value) < 1e-9);
  CHECK(r.a_minus1 == doctest::Approx(-0.5));
  CHECK(r.rhs_bound == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r.pass);
}

TEST_CASE("sum rule is unsupported on tabulated data") {
  const DispersionModel tab =
      parse_tabulated("# f_inf=1\nomega,re_f,im_f\n0.1,2,0.1\n1,2,0.2\n2,1.5,0.1\n");
  CHECK_THROWS_AS(sum_rule_integral(tab, Measure::dirac(0.0), kBand), UnsupportedDomainError);
}
