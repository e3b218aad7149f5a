#include "pbounds/interp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pbounds/errors.hpp"

namespace pbounds {

CubicHermite::CubicHermite(std::vector<double> xs, std::vector<double> ys, const char* who)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n)
    throw DomainError(std::string(who) + ": need >= 2 matching knots");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(xs_[i + 1] > xs_[i]))
      throw DomainError(std::string(who) + ": knots must be strictly increasing");
}

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : CubicHermite(std::move(xs), std::move(ys), "MonotoneCubic") {
  const std::size_t n = xs_.size();

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs_[i + 1] - xs_[i];
    delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
  }
  slopes_.assign(n, 0.0);
  if (n == 2) {
    slopes_[0] = slopes_[1] = delta[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  // one-sided three-point end slopes, limited to preserve shape
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0)) s = 3.0 * d0;
    return s;
  };
  slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : CubicHermite(std::move(xs), std::move(ys), "CubicSpline") {
  const std::size_t n = xs_.size();
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs_[i + 1] - xs_[i];
    delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
  }
  // second derivatives M with M₀ = M_{n−1} = 0 (Thomas algorithm)
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    std::vector<double> diag(n - 2), rhs(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      diag[i - 1] = 2.0 * (h[i - 1] + h[i]);
      rhs[i - 1] = 6.0 * (delta[i] - delta[i - 1]);
    }
    for (std::size_t k = 1; k < n - 2; ++k) {
      const double w = h[k] / diag[k - 1];
      diag[k] -= w * h[k];
      rhs[k] -= w * rhs[k - 1];
    }
    m[n - 2] = rhs[n - 3] / diag[n - 3];
    for (std::size_t k = n - 3; k-- > 0;) m[k + 1] = (rhs[k] - h[k + 1] * m[k + 2]) / diag[k];
  }
  slopes_.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i) slopes_[i] = delta[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
  slopes_[n - 1] = delta[n - 2] + h[n - 2] * (m[n - 2] + 2.0 * m[n - 1]) / 6.0;
}

std::size_t CubicHermite::cell(double x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
  return std::min(i, xs_.size() - 2);
}

double CubicHermite::operator()(double x) const {
  const std::size_t i = cell(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * ys_[i] + h10 * h * slopes_[i] + h01 * ys_[i + 1] + h11 * h * slopes_[i + 1];
}

double CubicHermite::derivative(double x) const {
  const std::size_t i = cell(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double t2 = t * t;
  const double d00 = (6 * t2 - 6 * t) / h, d10 = 3 * t2 - 4 * t + 1;
  const double d01 = (-6 * t2 + 6 * t) / h, d11 = 3 * t2 - 2 * t;
  return d00 * ys_[i] + d10 * slopes_[i] + d01 * ys_[i + 1] + d11 * slopes_[i + 1];
}

}  // namespace pbounds
