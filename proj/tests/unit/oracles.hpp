#pragma once

// Reference computations that share no code with the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

// Carlson's symmetric elliptic integral R_D(x, y, z) by duplication.
inline double carlson_rd(double x, double y, double z) {
  double sum = 0.0, fac = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sx * sz + sy * sz;
    sum += fac / (sz * (z + lam));
    fac *= 0.25;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    const double mu = (x + y + 3.0 * z) / 5.0;
    const double dx = (mu - x) / mu, dy = (mu - y) / mu, dz = (mu - z) / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 1e-5) {
      const double ea = dx * dy, eb = dz * dz;
      const double ec = ea - eb, ed = ea - 6.0 * eb, ee = ed + ec + ec;
      const double s = 1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
                       dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea));
      return 3.0 * sum + fac * s / (mu * std::sqrt(mu));
    }
  }
  return NAN;
}

// Depolarization factor along semiaxis a1: (a1 a2 a3 / 3) R_D(a2², a3², a1²).
inline double depolarization(double a1, double a2, double a3) {
  return a1 * a2 * a3 / 3.0 * carlson_rd(a2 * a2, a3 * a3, a1 * a1);
}

// Prolate spheroid (a > b = c): factor along the long axis.
inline double prolate_long_axis(double a, double b) {
  const double e = std::sqrt(1.0 - b * b / (a * a));
  return (1.0 - e * e) / (e * e) * (std::atanh(e) / e - 1.0);
}

// Coated sphere in a uniform field E0 along z, solved from the interface
// conditions. Potentials (times cos θ): core A r, shell B r + C/r²,
// outside −E0 r + D/r². Returns α = 4π ε0 D / E0.
inline std::complex<double> coated_sphere_alpha(double a, double b, double eps_core,
                                                std::complex<double> eps_shell, double eps0) {
  using C = std::complex<double>;
  Eigen::Matrix4cd M;
  Eigen::Vector4cd rhs;
  // unknowns (A, B, C, D); potential and normal D continuous at r = a and r = b
  M << a, -a, -1.0 / (a * a), 0.0,
       eps_core, -eps_shell, 2.0 * eps_shell / (a * a * a), 0.0,
       0.0, b, 1.0 / (b * b), -1.0 / (b * b),
       0.0, eps_shell, -2.0 * eps_shell / (b * b * b), 2.0 * eps0 / (b * b * b);
  const double E0 = 1.0;
  rhs << 0.0, 0.0, -E0 * b, -eps0 * E0;
  const Eigen::Vector4cd x = M.fullPivLu().solve(rhs);
  return C(4.0 * M_PI * eps0) * x[3] / E0;
}

// Composite Simpson rule with n (even) panels.
template <class F>
auto simpson(F&& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  auto s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * (h / 3.0);
}

}  // namespace oracle
