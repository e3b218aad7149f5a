#include "pbounds/grading.hpp"

#include <algorithm>

namespace pbounds {

std::vector<double> graded_breakpoints(const std::vector<double>& centres, double lo, double hi,
                                       double width) {
  std::vector<double> c(centres);
  std::sort(c.begin(), c.end());
  std::vector<double> out;
  if (!(width > 0.0)) return out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = c[i];
    if (x < lo || x > hi) continue;
    const double left = (i == 0 ? x - lo : x - c[i - 1]);
    const double right = (i + 1 == c.size() ? hi - x : c[i + 1] - x);
    if (x > lo && x < hi) out.push_back(x);
    for (double w = 0.25 * width; w < 0.5 * right; w *= 2.0) out.push_back(x + w);
    for (double w = 0.25 * width; w < 0.5 * left; w *= 2.0) out.push_back(x - w);
  }
  std::erase_if(out, [&](double x) { return !(x > lo && x < hi); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace pbounds
