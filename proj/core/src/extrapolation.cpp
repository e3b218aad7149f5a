#include "pbounds/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pbounds/errors.hpp"

namespace pbounds {

namespace {

double richardson(double h0, double h1, double f0, double f1, double p) {
  const double r = std::pow(h0 / h1, p);
  return f1 + (f1 - f0) / (r - 1.0);
}

}  // namespace

LimitEstimate extrapolate_to_zero(std::span<const double> h, std::span<const double> values) {
  if (h.size() != values.size() || h.empty())
    throw DomainError("extrapolate_to_zero: need matching, non-empty sequences");
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0)) throw DomainError("extrapolate_to_zero: step sizes must be positive");
    if (i > 0 && !(h[i] < h[i - 1]))
      throw DomainError("extrapolate_to_zero: step sizes must be strictly decreasing");
  }
  LimitEstimate out;
  const std::size_t n = h.size();
  if (n == 1) {
    out.value = values[0];
    return out;
  }
  const double scale = std::max(1.0, std::abs(values[n - 1]));
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * scale;

  for (std::size_t i = 2; i < n; ++i) {
    const double a = values[i - 1] - values[i - 2];
    const double b = values[i] - values[i - 1];
    if (std::abs(a) > noise && std::abs(b) > noise && a * b < 0.0) out.monotone = false;
  }

  // order from the ratio of the differences ending at index k
  auto order_at = [&](std::size_t k) {
    const double d1 = values[k - 1] - values[k - 2];
    const double d2 = values[k] - values[k - 1];
    if (!(std::abs(d1) > noise && std::abs(d2) > noise) || d1 * d2 < 0.0) return 1.0;
    // for geometric h with ratio r: d1/d2 ≈ r^p
    const double r = h[k - 1] / h[k];
    const double est = std::log(std::abs(d1 / d2)) / std::log(r);
    return std::isfinite(est) ? std::clamp(est, 0.5, 4.0) : 1.0;
  };

  const double p = (n >= 3 && out.monotone) ? order_at(n - 1) : 1.0;
  out.order = p;
  const double last = richardson(h[n - 2], h[n - 1], values[n - 2], values[n - 1], p);
  out.value = last;
  if (n >= 3) {
    // the previous extrapolant, built with the order seen one step earlier
    const double q = (n >= 4 && out.monotone) ? order_at(n - 2) : 1.0;
    const double prev = richardson(h[n - 3], h[n - 2], values[n - 3], values[n - 2], q);
    out.error_estimate = std::abs(last - prev);
  } else {
    out.error_estimate = std::abs(values[n - 1] - values[n - 2]);
  }
  return out;
}

}  // namespace pbounds
