#pragma once

// Globally adaptive Gauss–Kronrod (7/15) quadrature over a list of breakpoints.
// Panels are bisected in order of decreasing error estimate until the summed
// error meets the tolerance. The final sum is accumulated in panel position
// order, so results do not depend on the refinement history.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "pbounds/errors.hpp"

namespace pbounds {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_panels = 20000;
  /// Throw QuadratureError when the budget is exhausted instead of returning
  /// the best estimate with converged = false.
  bool throw_on_failure = true;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = true;
  std::pair<double, double> worst{0.0, 0.0};
};

namespace detail {

struct GkPanel {
  double lo, hi, value, error;
};

// Abscissae and weights of the 15-point Kronrod rule and its embedded 7-point
// Gauss rule (QUADPACK qk15).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
GkPanel gk15(F& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = f(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  const double value = kronrod * h;
  const double error = std::abs((kronrod - gauss) * h);
  return {lo, hi, value, error};
}

}  // namespace detail

/// Integrate a real function over [breakpoints.front(), breakpoints.back()].
/// Breakpoints must be sorted; duplicates are dropped.
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> breakpoints,
                           const QuadratureOptions& opt = {}) {
  std::vector<double> pts(breakpoints.begin(), breakpoints.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  QuadratureResult out;
  if (pts.size() < 2) return out;

  auto cmp = [](const detail::GkPanel& a, const detail::GkPanel& b) {
    if (a.error != b.error) return a.error < b.error;
    return a.lo > b.lo;  // deterministic tie-break
  };
  std::priority_queue<detail::GkPanel, std::vector<detail::GkPanel>, decltype(cmp)> heap(cmp);

  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto p = detail::gk15(f, pts[i], pts[i + 1]);
    total += p.value;
    err += p.error;
    heap.push(p);
  }

  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  while (err > tolerance() && heap.size() < opt.max_panels) {
    auto worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // panel at floating-point resolution
    heap.pop();
    auto left = detail::gk15(f, worst.lo, mid);
    auto right = detail::gk15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  std::vector<detail::GkPanel> panels;
  panels.reserve(heap.size());
  out.worst = {heap.top().lo, heap.top().hi};
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const detail::GkPanel& a, const detail::GkPanel& b) { return a.lo < b.lo; });
  out.value = 0.0;
  out.error = 0.0;
  for (const auto& p : panels) {
    out.value += p.value;
    out.error += p.error;
  }
  out.panels = panels.size();
  out.converged = out.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value));
  if (!out.converged && opt.throw_on_failure) {
    std::ostringstream msg;
    msg << "adaptive quadrature did not converge: error " << out.error << " after "
        << out.panels << " panels; worst subinterval [" << out.worst.first << ", "
        << out.worst.second << "]";
    throw QuadratureError(msg.str(), out.worst.first, out.worst.second, out.error);
  }
  return out;
}

template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureOptions& opt = {}) {
  const double pts[2] = {lo, hi};
  return integrate(std::forward<F>(f), std::span<const double>(pts, 2), opt);
}

}  // namespace pbounds
