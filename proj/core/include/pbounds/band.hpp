#pragma once

namespace pbounds {

/// Finite frequency band [ω₋, ω₊] ⊂ (0, ∞) and its squared image [x₋, x₊].
class FrequencyBand {
 public:
  FrequencyBand() = default;
  FrequencyBand(double omega_minus, double omega_plus);
  /// Band whose squared image is [x_minus, x_plus].
  static FrequencyBand from_squared(double x_minus, double x_plus);

  double omega_minus() const { return omega_minus_; }
  double omega_plus() const { return omega_plus_; }
  double x_minus() const { return x_minus_; }
  double x_plus() const { return x_plus_; }
  bool contains(double omega) const { return omega >= omega_minus_ && omega <= omega_plus_; }

 private:
  double omega_minus_ = 1.0;
  double omega_plus_ = 2.0;
  // stored separately so that from_squared() round-trips exactly
  double x_minus_ = 1.0;
  double x_plus_ = 4.0;
};

}  // namespace pbounds
