#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pbounds {

/// Piecewise cubic Hermite interpolant on strictly increasing knots. The
/// subclasses differ only in how the knot slopes are chosen.
class CubicHermite {
 public:
  CubicHermite() = default;
  double operator()(double x) const;
  double derivative(double x) const;

  double lo() const { return xs_.front(); }
  double hi() const { return xs_.back(); }
  std::size_t size() const { return xs_.size(); }
  std::span<const double> knots() const { return xs_; }
  std::span<const double> values() const { return ys_; }

  /// Index i with xs[i] ≤ x ≤ xs[i+1] (clamped to the end cells).
  std::size_t cell(double x) const;

 protected:
  CubicHermite(std::vector<double> xs, std::vector<double> ys, const char* who);
  std::vector<double> xs_, ys_, slopes_;
};

/// Shape-preserving interpolant (Fritsch–Carlson slopes with the
/// Fritsch–Butland harmonic mean at interior knots). Monotone data stays
/// monotone and no new extrema appear between knots.
class MonotoneCubic : public CubicHermite {
 public:
  MonotoneCubic() = default;
  /// xs strictly increasing, at least two knots.
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);
};

/// C² natural cubic spline. Fourth-order accurate away from the ends, but
/// may overshoot near sharp features.
class CubicSpline : public CubicHermite {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> xs, std::vector<double> ys);
};

}  // namespace pbounds
