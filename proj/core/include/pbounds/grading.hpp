#pragma once

#include <cmath>
#include <vector>

namespace pbounds {

/// Breakpoints clustered geometrically around each centre: c ± w·2^k for
/// w = width/4 up to half the distance to the neighbouring centre. Returns
/// the sorted points strictly inside (lo, hi); callers add the ends. Used where an integrand has a Lorentzian peak of half-width
/// ~width at c.
std::vector<double> graded_breakpoints(const std::vector<double>& centres, double lo, double hi,
                                       double width);

/// Golden-section search for a maximum of f on [lo, hi]; returns the best of
/// the final bracket and the two endpoints.
template <class F>
double golden_max(F&& f, double lo, double hi, double xtol) {
  if (!(hi > lo)) return lo;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  double best = fc >= fd ? c : d;
  double fbest = std::max(fc, fd);
  for (double e : {lo, hi}) {
    const double fe = f(e);
    if (fe > fbest) {
      fbest = fe;
      best = e;
    }
  }
  return best;
}

}  // namespace pbounds
