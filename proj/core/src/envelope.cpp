#include "pbounds/envelope.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pbounds/analytic_polarizability.hpp"
#include "pbounds/errors.hpp"

namespace pbounds {

PolarizabilityResponse::PolarizabilityResponse(std::string name, Evaluator eval,
                                               Eigen::Matrix3d alpha_inf)
    : name_(std::move(name)), eval_(std::move(eval)), alpha_inf_(std::move(alpha_inf)) {
  if (!eval_) throw DomainError("PolarizabilityResponse: empty evaluator");
}

PolarizabilityResponse PolarizabilityResponse::sharp_drude(const Eigen::Matrix3d& alpha_inf,
                                                           double omega0) {
  if (!(omega0 > 0.0)) throw DomainError("sharp_drude: omega0 must be positive");
  Eigen::Matrix3cd ainf = alpha_inf.cast<Complex>();
  std::ostringstream name;
  name << "sharp_drude(omega0=" << omega0 << ")";
  return PolarizabilityResponse(
      name.str(),
      [ainf, omega0](Complex w) -> Eigen::Matrix3cd {
        if (w == Complex(0.0)) throw PoleError("sharp_drude: pole at omega = 0", 0.0);
        return ainf * (1.0 - omega0 * omega0 / (w * w));
      },
      alpha_inf);
}

PolarizabilityResponse PolarizabilityResponse::constant(const Eigen::Matrix3cd& value,
                                                        const Eigen::Matrix3d& alpha_inf) {
  return PolarizabilityResponse(
      "constant", [value](Complex) -> Eigen::Matrix3cd { return value; }, alpha_inf);
}

PolarizabilityResponse PolarizabilityResponse::coated_sphere(double a, double b, double eps_core,
                                                             const DispersionModel& shell,
                                                             double eps0) {
  const double ainf = coated_sphere_alpha(a, b, eps_core, Complex(shell.f_inf()), eps0).real();
  std::ostringstream name;
  name << "coated_sphere(a=" << a << ", b=" << b << ", eps_core=" << eps_core
       << ", shell=" << shell.describe() << ")";
  return PolarizabilityResponse(
      name.str(),
      [=](Complex w) -> Eigen::Matrix3cd {
        return coated_sphere_alpha(a, b, eps_core, shell, eps0, w) *
               Eigen::Matrix3cd::Identity();
      },
      ainf * Eigen::Matrix3d::Identity());
}

ScalarResponse contract(const PolarizabilityResponse& alpha, const Eigen::Vector3cd& E0) {
  if (E0.norm() == 0.0) throw DomainError("contract: E0 must be non-zero");
  const double f_inf = E0.dot(alpha.alpha_inf().cast<Complex>() * E0).real();
  return ScalarResponse([alpha, E0](Complex w) { return E0.dot(alpha.eval(w) * E0); }, f_inf,
                        alpha.name());
}

namespace {

std::vector<double> band_grid(const FrequencyBand& band, double omega0, int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = band.omega_minus() + (band.omega_plus() - band.omega_minus()) * i / (n - 1);
  w.back() = band.omega_plus();
  if (band.contains(omega0)) w.push_back(omega0);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

}  // namespace

EnvelopeResult cloaking_envelope(const PolarizabilityResponse& alpha, const Eigen::Vector3cd& E0,
                                 const FrequencyBand& band, double omega0, int n_grid,
                                 double tol) {
  if (n_grid < 2) throw DomainError("cloaking_envelope: n_grid must be at least 2");
  if (!(omega0 > 0.0)) throw DomainError("cloaking_envelope: omega0 must be positive");
  const ScalarResponse f = contract(alpha, E0);
  const double finf = f.f_inf;
  const double w02 = omega0 * omega0;
  const auto w = band_grid(band, omega0, n_grid);

  EnvelopeResult res;
  std::ostringstream notes;

  const bool complex_field = E0.imag().norm() > 0.0;
  const Eigen::Matrix3cd a0 = alpha.eval(omega0);
  const Eigen::Matrix3cd ainf = alpha.alpha_inf().cast<Complex>();
  res.residual_at_omega0 = E0.dot(a0 * E0).real() / finf;

  res.above.name = "cloak_envelope_above";
  res.below.name = "cloak_envelope_below";
  res.tensor.name = "cloak_tensor_psd";
  for (auto* r : {&res.above, &res.below, &res.tensor}) r->band = band;
  double worst_above = std::numeric_limits<double>::infinity();
  double worst_below = std::numeric_limits<double>::infinity();
  double max_im = 0.0, im_at = w.front();
  double min_eig = std::numeric_limits<double>::infinity();
  double max_eig = -std::numeric_limits<double>::infinity();
  double min_eig_at = w.front();
  double norm_scale = 0.0;

  for (double om : w) {
    const Eigen::Matrix3cd a = alpha.eval(om);
    const Complex fv = E0.dot(a * E0);
    if (std::abs(fv.imag()) > max_im) {
      max_im = std::abs(fv.imag());
      im_at = om;
    }
    const double val = fv.real();
    const double edge = finf * (om * om - w02) / (om * om);
    EnvelopePoint pt{om, val, std::nullopt, std::nullopt};
    if (om >= omega0) {
      pt.lo = edge;
      if (val - edge < worst_above) {
        worst_above = val - edge;
        res.above.lhs = edge;
        res.above.rhs = val;
        res.above.witnesses = {{om, val}};
      }
    }
    if (om <= omega0) {
      pt.hi = edge;
      if (edge - val < worst_below) {
        worst_below = edge - val;
        res.below.lhs = val;
        res.below.rhs = edge;
        res.below.witnesses = {{om, val}};
      }
    }
    res.curve.push_back(pt);

    if ((a - a.transpose()).norm() > 1e-10 * (1.0 + a.norm())) res.reciprocity_warning = true;
    const Eigen::Matrix3cd t1 = om * om * (a - ainf);
    const Eigen::Matrix3cd t0 = w02 * (a0 - ainf);
    Eigen::Matrix3cd m = (om >= omega0 ? 1.0 : -1.0) * (t1 - t0);
    norm_scale = std::max({norm_scale, t1.norm(), t0.norm()});
    Eigen::Matrix3cd herm;
    if (res.reciprocity_warning) {
      const Eigen::Matrix3d re = m.real();
      herm = (0.5 * (re + re.transpose())).cast<Complex>();
    } else {
      herm = 0.5 * (m + m.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(herm, Eigen::EigenvaluesOnly);
    const auto ev = es.eigenvalues();
    if (ev.minCoeff() < min_eig) {
      min_eig = ev.minCoeff();
      min_eig_at = om;
    }
    max_eig = std::max(max_eig, ev.maxCoeff());
  }

  if (max_im > kTransparencyTol * (1.0 + std::abs(finf))) {
    std::ostringstream msg;
    msg << "cloaking_envelope: band is not a transparency window; max |Im f| = " << max_im
        << " at omega = " << im_at;
    throw PreconditionError(msg.str());
  }

  const double stol = tol * (1.0 + std::abs(finf));
  res.above.tol = stol;
  res.below.tol = stol;
  if (std::isinf(worst_above)) notes << "no samples above omega0; ";
  if (std::isinf(worst_below)) notes << "no samples below omega0; ";
  res.above.finalize();
  res.below.finalize();

  res.min_eigenvalue = min_eig;
  res.max_eigenvalue = max_eig;
  res.tensor.lhs = 0.0;
  res.tensor.rhs = min_eig;
  res.tensor.tol = 1e-10 * std::max(norm_scale, std::numeric_limits<double>::min());
  res.tensor.witnesses = {{min_eig_at, min_eig}};
  res.tensor.finalize();

  notes << "f(omega0)/f_inf = " << res.residual_at_omega0;
  if (res.reciprocity_warning) {
    notes << "; alpha is not symmetric: tensor check uses its real symmetric part (real E0 only)";
    if (complex_field) notes << "; complex E0 with a non-reciprocal alpha is outside the bound's scope";
  }
  res.notes = notes.str();
  res.above.notes = res.notes;
  res.below.notes = res.notes;
  res.tensor.notes = res.reciprocity_warning ? "real symmetric part" : "hermitian part";
  return res;
}

}  // namespace pbounds
