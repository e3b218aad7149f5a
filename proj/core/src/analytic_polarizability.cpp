#include "pbounds/analytic_polarizability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pbounds/errors.hpp"
#include "pbounds/quadrature.hpp"

namespace pbounds {

Eigen::Matrix3d sphere_alpha_inf(double R, double eps, double eps0) {
  if (!(R > 0.0)) throw DomainError("sphere_alpha_inf: R must be positive");
  if (!(eps0 > 0.0)) throw DomainError("sphere_alpha_inf: eps0 must be positive");
  if (!(eps > eps0)) throw DomainError("sphere_alpha_inf: requires eps > eps0");
  return 4.0 * kPi * R * R * R * eps0 * (eps - eps0) / (eps + 2.0 * eps0) *
         Eigen::Matrix3d::Identity();
}

CoatedSphereTerms coated_sphere_terms(double a, double b, double eps_core, Complex eps_shell,
                                      double eps0) {
  if (!(a >= 0.0 && b > a)) throw DomainError("coated_sphere: need 0 <= a < b");
  if (!(eps0 > 0.0)) throw DomainError("coated_sphere: eps0 must be positive");
  const double eta = (a / b) * (a / b) * (a / b);
  const Complex e1 = eps_core, e2 = eps_shell;
  return {(e2 - eps0) * (e1 + 2.0 * e2) + (e1 - e2) * (eps0 + 2.0 * e2) * eta,
          (e2 + 2.0 * eps0) * (e1 + 2.0 * e2) + 2.0 * (e2 - eps0) * (e1 - e2) * eta};
}

Complex coated_sphere_alpha(double a, double b, double eps_core, Complex eps_shell, double eps0) {
  const auto t = coated_sphere_terms(a, b, eps_core, eps_shell, eps0);
  const double scale = (std::abs(eps_shell) + 2.0 * eps0) *
                       (std::abs(eps_core) + 2.0 * std::abs(eps_shell));
  if (std::abs(t.denominator) < 1e-14 * scale) {
    std::ostringstream msg;
    msg << "coated_sphere_alpha: resonance of the coated sphere at eps_shell = " << eps_shell.real()
        << (eps_shell.imag() < 0 ? "" : "+") << eps_shell.imag() << "i";
    throw PoleError(msg.str(), std::numeric_limits<double>::quiet_NaN());
  }
  return 4.0 * kPi * eps0 * b * b * b * t.numerator / t.denominator;
}

Complex coated_sphere_alpha(double a, double b, double eps_core, const DispersionModel& shell,
                            double eps0, Complex omega) {
  try {
    return coated_sphere_alpha(a, b, eps_core, shell.eval(omega), eps0);
  } catch (const PoleError& e) {
    throw PoleError(e.what(), omega.real());
  }
}

Eigen::Vector3d depolarization_factors(const Eigen::Vector3d& semiaxes) {
  if (!(semiaxes.minCoeff() > 0.0)) throw DomainError("depolarization_factors: semiaxes must be positive");
  const Eigen::Vector3d sq = semiaxes.cwiseProduct(semiaxes);
  const double prod = semiaxes.prod();
  // s = c t/(1 − t) maps [0, 1) onto [0, ∞)
  const double c = std::cbrt(sq.prod());
  std::vector<double> pts{0.0, 1.0};
  for (double s : sq) pts.push_back(s / (c + s));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Eigen::Vector3d L;
  for (int i = 0; i < 3; ++i) {
    auto integrand = [&](double t) {
      const double u = 1.0 - t;
      const double s = c * t / u;
      const double root = std::sqrt((s + sq[0]) * (s + sq[1]) * (s + sq[2]));
      return c / (u * u) / ((s + sq[i]) * root);
    };
    L[i] = 0.5 * prod * integrate(integrand, pts, {.abs_tol = 1e-14, .max_panels = 50000}).value;
  }
  return L;
}

EllipsoidPolarizability ellipsoid_alpha(const Eigen::Vector3d& semiaxes, double eps, double eps0) {
  if (!(eps0 > 0.0)) throw DomainError("ellipsoid_alpha: eps0 must be positive");
  if (!(eps > eps0)) throw DomainError("ellipsoid_alpha: requires eps > eps0");
  EllipsoidPolarizability res;
  res.depolarization = depolarization_factors(semiaxes);
  res.accuracy_warning = semiaxes.maxCoeff() / semiaxes.minCoeff() > 1e4;
  const double vol = 4.0 * kPi / 3.0 * semiaxes.prod();
  res.alpha.setZero();
  for (int i = 0; i < 3; ++i)
    res.alpha(i, i) = vol * eps0 * (eps - eps0) / (eps0 + res.depolarization[i] * (eps - eps0));
  return res;
}

double design_cloak_frequency(double a, double b, double eps_core, const DispersionModel& shell,
                              double eps0, double lo, double hi) {
  if (!(lo > 0.0 && hi > lo)) throw DomainError("design_cloak_frequency: need 0 < lo < hi");
  auto g = [&](double w) {
    return coated_sphere_terms(a, b, eps_core, shell.eval(w), eps0).numerator.real();
  };
  double fl = g(lo), fh = g(hi);
  if (fl == 0.0) return lo;
  if (fh == 0.0) return hi;
  if ((fl < 0.0) == (fh < 0.0)) {
    std::ostringstream msg;
    msg << "design_cloak_frequency: no sign change of the coated-sphere numerator on [" << lo
        << ", " << hi << "]";
    throw DomainError(msg.str());
  }
  double l = lo, r = hi;
  for (int it = 0; it < 200 && r - l > 1e-6 * r; ++it) {
    const double m = 0.5 * (l + r);
    const double fm = g(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fl < 0.0)) {
      l = m;
      fl = fm;
    } else {
      r = m;
    }
  }
  // secant polish, kept inside the bracket
  double x0 = l, x1 = r, f0 = g(x0), f1 = g(x1);
  for (int it = 0; it < 50; ++it) {
    if (f1 == f0) break;
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 >= l && x2 <= r)) x2 = 0.5 * (l + r);
    const double f2 = g(x2);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    if (std::abs(x1 - x0) <= 1e-12 * std::abs(x1) || f1 == 0.0) break;
  }
  return x1;
}

}  // namespace pbounds
