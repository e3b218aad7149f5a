#include <cmath>
#include <vector>

#include "doctest.h"
#include "pbounds/bounds.hpp"
#include "pbounds/envelope.hpp"
#include "pbounds/errors.hpp"
#include "pbounds/kramers_kronig.hpp"
#include "pbounds/polarizability.hpp"

using namespace pbounds;

namespace {
const DispersionModel kDrude0(LossyDrude{1.0, 1.0, 0.0});
const FrequencyBand kBand = FrequencyBand::from_squared(0.25, 2.25);
}  // namespace

TEST_CASE("transparency bound is an equality for lossless Drude") {
  const TransparencyResult t = transparency_bound(kDrude0, FrequencyBand(0.5, 1.5));
  CHECK(t.derivative.pass);
  CHECK(t.pairs.pass);
  CHECK(std::abs(t.derivative.slack) < 1e-10);
  for (const Witness& w : t.derivative_curve) CHECK(std::abs(w.value - 1.0) < 1e-10);
}

TEST_CASE("single lossless resonance has strict transparency slack") {
  const DispersionModel gl(GeneralizedLorentzLossless{1.0, {{1.0, 4.0}}});
  const TransparencyResult t = transparency_bound(gl, FrequencyBand(0.5, 1.5));
  CHECK(t.derivative.pass);
  // v′(x) = 1 + 4/(x − 4)² is smallest at x = ω₋²
  CHECK(t.derivative.slack == doctest::Approx(4.0 / std::pow(0.25 - 4.0, 2)).epsilon(1e-6));
}

TEST_CASE("transparency precondition rejects lossy data and poles") {
  const DispersionModel lossy(LossyDrude{1.0, 1.0, 0.1});
  CHECK_THROWS_AS(transparency_bound(lossy, FrequencyBand(0.5, 1.5)), PreconditionError);
  const DispersionModel gl(GeneralizedLorentzLossless{1.0, {{1.0, 1.0}}});
  CHECK_THROWS_AS(transparency_bound(gl, FrequencyBand(0.5, 1.5)), PreconditionError);
}

TEST_CASE("level-set bound for v(x) = x − 1") {
  const BoundReport r = lossy_level_set_bound(kDrude0, kBand, 0.5);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.rhs == doctest::Approx(2.0));
  CHECK(r.pass);
  CHECK_THROWS_AS(lossy_level_set_bound(kDrude0, kBand, 0.0), DomainError);
}

TEST_CASE("max bounds for v(x) = x − 1") {
  const LossyMaxResult r = lossy_max_bound(kDrude0, kBand);
  CHECK(r.v_form.lhs == doctest::Approx(0.5));
  CHECK(r.v_form.rhs == doctest::Approx(1.25).epsilon(1e-9));
  CHECK(r.vtilde_form.lhs == doctest::Approx(0.5));
  CHECK(r.vtilde_form.rhs == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(r.v_form.pass);
  CHECK(r.vtilde_form.pass);
}

TEST_CASE("lossy bounds hold on lossy models") {
  for (const DispersionModel& f : {DispersionModel(LossyDrude{1.0, 1.0, 0.1}),
                                   DispersionModel(LossyDrude{1.0, 1.0, 1.0}),
                                   DispersionModel(LossyLorentz{1.0, {{1.0, 1.0, 0.2}}})}) {
    for (double delta : {0.05, 0.5, 2.0}) CHECK(lossy_level_set_bound(f, kBand, delta).slack >= 0.0);
    const LossyMaxResult m = lossy_max_bound(f, kBand);
    CHECK(m.v_form.slack >= 0.0);
    CHECK(m.vtilde_form.slack >= 0.0);
  }
}

TEST_CASE("ScalarResponse validates its inputs") {
  CHECK_THROWS_AS(ScalarResponse([](Complex) { return Complex(1.0); }, 0.0, "bad"), DomainError);
  CHECK_THROWS_AS(ScalarResponse(nullptr, 1.0, "bad"), DomainError);
}

TEST_CASE("Kramers-Kronig reconstructs a lossy Lorentz model") {
  const DispersionModel f(LossyLorentz{1.0, {{1.0, 4.0, 0.2}}});
  const int n = 2000;
  std::vector<double> w(n), im(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 1e-2 * std::pow(1e4, double(i) / (n - 1));
    im[i] = f(w[i]).imag();
  }
  const KramersKronig kk(w, im, 1.0);
  double worst = 0.0;
  for (int i = n / 10; i < n - n / 10; i += 7) {
    const double re = f(w[i]).real();
    worst = std::max(worst, std::abs(kk.real_part(w[i]).value - re) / (1.0 + std::abs(re)));
  }
  CHECK(worst < 1e-4);
  CHECK(std::abs(kk_real_part(w, im, 1.0, 2.0) - f(2.0).real()) < 1e-3 * (1.0 + std::abs(f(2.0).real())));
  CHECK_THROWS_AS(kk.real_part(w.front()), DomainError);
}

TEST_CASE("sharp tensor model meets the envelope with equality") {
  Eigen::Matrix3d ainf = Eigen::Matrix3d::Zero();
  ainf.diagonal() << 1.0, 2.0, 0.5;
  ainf(0, 1) = ainf(1, 0) = 0.3;
  for (double w0 : {1.2, 2.0, 2.9}) {
    const auto alpha = PolarizabilityResponse::sharp_drude(ainf, w0);
    const EnvelopeResult env = cloaking_envelope(alpha, Eigen::Vector3cd(1.0, 0.5, 0.0), FrequencyBand(1.0, 3.0), w0);
    CHECK(env.pass());
    CHECK(env.min_eigenvalue >= -1e-10);
    CHECK(env.max_eigenvalue <= 1e-10);
    CHECK(std::abs(env.residual_at_omega0) < 1e-14);
  }
}

TEST_CASE("a frequency-independent response violates the envelope") {
  Eigen::Matrix3cd a = Eigen::Matrix3cd::Identity();
  const auto alpha = PolarizabilityResponse::constant(a, Eigen::Matrix3d::Identity() * 2.0);
  const EnvelopeResult env = cloaking_envelope(alpha, Eigen::Vector3cd::UnitX(), FrequencyBand(1.0, 3.0), 2.0);
  CHECK_FALSE(env.pass());
}

TEST_CASE("non-reciprocal tensors are flagged") {
  Eigen::Matrix3cd a = Eigen::Matrix3cd::Identity();
  a(0, 1) = 0.2;
  const auto alpha = PolarizabilityResponse::constant(a, Eigen::Matrix3d::Identity());
  const EnvelopeResult env = cloaking_envelope(alpha, Eigen::Vector3cd::UnitX(), FrequencyBand(1.0, 3.0), 2.0);
  CHECK(env.reciprocity_warning);
}

TEST_CASE("lossy responses fail the envelope precondition") {
  const DispersionModel lossy(LossyDrude{1.0, 1.0, 0.1});
  const auto alpha = PolarizabilityResponse::coated_sphere(0.5, 1.0, 3.0, lossy, 1.0);
  CHECK_THROWS_AS(cloaking_envelope(alpha, Eigen::Vector3cd::UnitX(), FrequencyBand(2.0, 3.0), 2.5),
                  PreconditionError);
}
