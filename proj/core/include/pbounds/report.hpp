#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pbounds/band.hpp"

namespace pbounds {

/// Extremizer or offending sample attached to a report.
struct Witness {
  double omega;
  double value;
};

/// Machine-checkable record of one inequality "lhs ≤ rhs" over a band.
/// slack = rhs − lhs and pass ⇔ slack ≥ −tol.
struct BoundReport {
  std::string name;
  FrequencyBand band;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::vector<Witness> witnesses;
  std::string notes;

  /// Fills slack and pass from lhs, rhs and tol.
  void finalize() {
    slack = rhs - lhs;
    pass = slack >= -tol;
  }
};

}  // namespace pbounds
