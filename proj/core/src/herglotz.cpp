#include "pbounds/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pbounds/errors.hpp"
#include "pbounds/grading.hpp"
#include "pbounds/quadrature.hpp"

namespace pbounds {

Complex stieltjes_u(const DispersionModel& f, Complex z) {
  if (z.imag() == 0.0 && z.real() < 0.0)
    throw DomainError("stieltjes_u: z on the cut (-inf, 0)");
  return f.eval(branch_sqrt(-z));
}

Complex herglotz_v(const DispersionModel& f, Complex z) { return z * f.eval(branch_sqrt(z)); }

Complex herglotz_vtilde(const DispersionModel& f, Complex z) {
  if (z.imag() < 0.0) throw DomainError("herglotz_vtilde: z below the real axis");
  return z * f.eval(z);
}

namespace {

constexpr double kOnSupport = 1e-14;

Complex cauchy_density(const Density& d, Complex z) {
  const double x = z.real(), y = z.imag();
  const double scale = 1.0 + std::max(std::abs(d.lo()), std::abs(d.hi()));
  const bool real_axis = y == 0.0;
  if (real_axis && (std::abs(x - d.lo()) <= kOnSupport * scale || std::abs(x - d.hi()) <= kOnSupport * scale))
    throw SingularEvaluationError("h_measure: real z at an endpoint of the density support");
  if (d.is_uniform()) {
    // ∫_lo^hi dξ/(ξ − z) = log((z − hi)/(z − lo)) on the branch with cut ℝ⁺
    return d.height() * branch_log((z - d.hi()) / (z - d.lo()));
  }
  if (real_axis && x > d.lo() && x < d.hi())
    throw SingularEvaluationError(
        "h_measure: real z inside a general density support; use the y -> 0+ limit");
  std::vector<double> pts{d.lo(), d.hi()};
  if (x > d.lo() && x < d.hi()) {
    auto graded = graded_breakpoints({x}, d.lo(), d.hi(), std::abs(y));
    pts.insert(pts.end(), graded.begin(), graded.end());
  }
  std::sort(pts.begin(), pts.end());
  const QuadratureOptions q{.abs_tol = 1e-13, .max_panels = 50000};
  const double re = integrate(
                        [&](double xi) {
                          const double dx = xi - x;
                          return d(xi) * dx / (dx * dx + y * y);
                        },
                        pts, q)
                        .value;
  const double im = integrate(
                        [&](double xi) {
                          const double dx = xi - x;
                          return d(xi) * y / (dx * dx + y * y);
                        },
                        pts, q)
                        .value;
  return {re, im};
}

}  // namespace

Complex h_measure(const Measure& m, Complex z) {
  if (!is_finite(z)) throw DomainError("h_measure: non-finite argument");
  if (z.imag() < 0.0) throw DomainError("h_measure: z below the real axis");
  Complex h = 0.0;
  for (const auto& a : m.atoms()) {
    const Complex d = a.position - z;
    if (z.imag() == 0.0 && std::abs(d) <= kOnSupport * (1.0 + std::abs(a.position))) {
      std::ostringstream msg;
      msg << "h_measure: real z on the atom at " << a.position;
      throw SingularEvaluationError(msg.str());
    }
    h += a.mass / d;
  }
  if (const auto& d = m.density()) h += cauchy_density(*d, z);
  return h;
}

Complex compose_vm(const Measure& m, const DispersionModel& f, Complex z) {
  const Complex v = herglotz_v(f, z);
  try {
    return h_measure(m, v);
  } catch (const SingularEvaluationError&) {
    throw SingularEvaluationError(
        "compose_vm: v(z) lies on the support of the measure; evaluate at z + iy and take the "
        "y -> 0+ limit instead");
  }
}

Complex HerglotzTriple::operator()(Complex z) const {
  if (!(z.imag() > 0.0)) throw DomainError("HerglotzTriple: representation holds for Im z > 0");
  return alpha * z + *gamma_shift + h_measure(measure, z);
}

HerglotzCoefficients herglotz_coefficients(const HerglotzEvaluator& h) {
  std::vector<double> inv_y, ratio;
  for (int k = 2; k <= 8; ++k) {
    const double y = std::pow(10.0, k);
    const Complex r = h(Complex(0.0, y)) / Complex(0.0, y);
    if (!is_finite(r)) throw ExtrapolationError("herglotz_coefficients: non-finite h(iy)/(iy)");
    inv_y.push_back(1.0 / y);
    ratio.push_back(r.real());
  }
  const std::size_t n = ratio.size();
  const double first = std::abs(ratio[1] - ratio[0]);
  const double last = std::abs(ratio[n - 1] - ratio[n - 2]);
  const double scale = 1.0 + std::abs(ratio[n - 1]);
  if (last > 1e-8 * scale && last >= first)
    throw ExtrapolationError("herglotz_coefficients: h(iy)/(iy) does not converge as y -> inf");
  const auto est = extrapolate_to_zero(inv_y, ratio);
  return {est.value, h(Complex(0.0, 1.0)).real(), est.error_estimate};
}

LimitEstimate extract_measure_mass(const HerglotzEvaluator& h, double a, double b,
                                   const ExtractOptions& opt) {
  if (!(b > a)) throw DomainError("extract_measure_mass: need a < b");
  if (opt.y_seq.empty()) throw DomainError("extract_measure_mass: empty y sequence");
  auto im_at = [&](double x, double y) { return h(Complex(x, y)).imag(); };

  std::vector<double> peaks;
  std::vector<double> values;
  double y_prev = 0.0;
  for (double y : opt.y_seq) {
    // track earlier peaks down to the current width
    std::vector<double> next;
    for (double p : peaks) {
      const double lo = std::max(a, p - 8.0 * y_prev), hi = std::min(b, p + 8.0 * y_prev);
      next.push_back(golden_max([&](double x) { return im_at(x, y); }, lo, hi, 1e-3 * y));
    }
    // and pick up new ones from a scan at this y
    const int n = std::max(opt.scan_points, 3);
    std::vector<double> xs(n), vs(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = a + (b - a) * i / (n - 1);
      vs[i] = im_at(xs[i], y);
    }
    for (int i = 0; i < n; ++i) {
      const bool left = i == 0 || vs[i] > vs[i - 1];
      const bool right = i == n - 1 || vs[i] >= vs[i + 1];
      if (left && right) {
        const double lo = xs[std::max(i - 1, 0)], hi = xs[std::min(i + 1, n - 1)];
        next.push_back(golden_max([&](double x) { return im_at(x, y); }, lo, hi, 1e-3 * y));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end(),
                           [&](double u, double v) { return std::abs(u - v) < 0.25 * y; }),
               next.end());
    peaks = next;

    std::vector<double> pts{a, b};
    auto graded = graded_breakpoints(peaks, a, b, y);
    pts.insert(pts.end(), graded.begin(), graded.end());
    std::sort(pts.begin(), pts.end());
    const auto r = integrate([&](double x) { return im_at(x, y); }, pts,
                             {.abs_tol = opt.quad_tol * kPi, .rel_tol = 1e-9, .max_panels = 100000});
    values.push_back(r.value / kPi);
    y_prev = y;
  }
  return extrapolate_to_zero(opt.y_seq, values);
}

}  // namespace pbounds
