#include "pbounds/kramers_kronig.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pbounds/complex_core.hpp"
#include "pbounds/errors.hpp"
#include "pbounds/quadrature.hpp"

namespace pbounds {

KramersKronig::KramersKronig(std::vector<double> omega, std::vector<double> im_f, double f_inf,
                             KramersKronigOptions opt)
    : f_inf_(f_inf), opt_(opt) {
  if (omega.size() != im_f.size() || omega.size() < 4)
    throw DomainError("KramersKronig: need at least 4 matching samples");
  if (!(omega.front() > 0.0)) throw DomainError("KramersKronig: frequencies must be positive");
  if (!(f_inf > 0.0)) throw DomainError("KramersKronig: f_inf must be positive");
  if (opt.interpolation == KramersKronigOptions::Interpolation::spline)
    g_ = CubicSpline(std::move(omega), std::move(im_f));
  else
    g_ = MonotoneCubic(std::move(omega), std::move(im_f));
}

KramersKronigResult KramersKronig::real_part(double w) const {
  const auto knots = g_.knots();
  if (!(w > knots.front() && w < knots.back())) {
    std::ostringstream msg;
    msg << "kk_real_part: omega = " << w << " outside the open sampled range (" << knots.front()
        << ", " << knots.back() << ")";
    throw DomainError(msg.str());
  }
  const double W = knots.back();
  const double w1 = knots.front();
  const double gw = g_(w);
  // limit of (ω′g(ω′) − ωg(ω))/(ω′² − ω²) as ω′ → ω
  const double r0 = (gw + w * g_.derivative(w)) / (2.0 * w);

  const std::size_t c = g_.cell(w);
  const double spacing = knots[c + 1] - knots[c];
  const double half = opt_.excision_cells * spacing;
  const double tiny = 1e-7 * w;

  auto g = [&](double x) { return x < w1 ? g_(w1) * x / w1 : g_(x); };
  auto reg = [&](double x) {
    const double d = x - w;
    if (std::abs(d) < tiny) return r0;
    return (x * g(x) - w * gw) / ((x - w) * (x + w));
  };

  std::vector<double> pts;
  pts.reserve(knots.size() + 4);
  pts.push_back(0.0);
  for (double k : knots)
    if (std::abs(k - w) > half) pts.push_back(k);
  pts.push_back(std::max(w - half, 0.5 * w));
  pts.push_back(w);
  pts.push_back(std::min(w + half, 0.5 * (w + W)));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const auto q = integrate(reg, pts, {.abs_tol = opt_.quad_tol, .max_panels = 400000});
  // P∫₀^W dω′/(ω′² − ω²) = ln((W − ω)/(W + ω)) / (2ω)
  const double patch = 0.5 * gw * std::log((W - w) / (W + w));

  KramersKronigResult res;
  res.value = f_inf_ + (2.0 / kPi) * (q.value + patch);
  res.quad_error = (2.0 / kPi) * q.error;
  res.tail_bound = (2.0 / (3.0 * kPi)) * std::abs(g_(W)) * W * W / (W * W - w * w);
  res.tail_warning = res.tail_bound > opt_.tail_tol;
  return res;
}

double kk_real_part(std::span<const double> omega, std::span<const double> im_f, double f_inf,
                    double omega_eval) {
  return KramersKronig({omega.begin(), omega.end()}, {im_f.begin(), im_f.end()}, f_inf)
      .real_part(omega_eval)
      .value;
}

}  // namespace pbounds
