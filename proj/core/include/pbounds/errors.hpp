#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pbounds {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or inside the guard zone of) a real pole of a lossless model.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double pole) : Error(what), pole_(pole) {}
  double pole() const noexcept { return pole_; }

 private:
  double pole_;
};

/// Evaluation requested where a model has no data (tabulated off-grid or off-axis).
class UnsupportedDomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation of a Herglotz function exactly on the support of its measure.
class SingularEvaluationError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double lo, double hi, double error)
      : Error(what), lo_(lo), hi_(hi), error_(error) {}
  /// Subinterval with the largest error estimate when the budget ran out.
  std::pair<double, double> worst_subinterval() const noexcept { return {lo_, hi_}; }
  double error_estimate() const noexcept { return error_; }

 private:
  double lo_, hi_, error_;
};

/// Limit extrapolation that does not settle (e.g. a divergent coefficient).
class ExtrapolationError : public Error {
 public:
  using Error::Error;
};

/// Malformed tabulated data; carries the 1-based line number of the offending row.
class LoadError : public Error {
 public:
  LoadError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// An operation's stated precondition (e.g. a transparency window) does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residual_history() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// Solution-quality check failed (e.g. a non-vanishing monopole).
class QualityError : public Error {
 public:
  using Error::Error;
};

/// Input the solver declines to run (scene too coarse, invalid geometry).
class RefusalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pbounds
