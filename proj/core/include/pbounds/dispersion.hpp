#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pbounds/complex_core.hpp"
#include "pbounds/band.hpp"
#include "pbounds/interp.hpp"
#include "pbounds/report.hpp"

namespace pbounds {

/// f = f∞ (1 − ω_p² / (z² + iγz)).
struct LossyDrude {
  double f_inf;
  double omega_p;
  double gamma = 0.0;
};

/// One resonance −A / (z² − ξ + iγz); ξ in (rad/s)².
struct LorentzTerm {
  double A;
  double xi;
  double gamma = 0.0;
};

/// f = f∞ − Σ A_n / (z² − ξ_n + iγ_n z).
struct LossyLorentz {
  double f_inf;
  std::vector<LorentzTerm> terms;
};

struct LosslessTerm {
  double A;
  double xi;
};

/// f = f∞ − Σ A_n / (z² − ξ_n), A_n > 0, ξ_n ≥ 0: non-dissipative generalized
/// Lorentz model with real poles at ±√ξ_n. With no terms this is the constant f∞.
struct GeneralizedLorentzLossless {
  double f_inf;
  std::vector<LosslessTerm> terms;
};

/// Real-axis samples with shape-preserving interpolation. Values for −ω are
/// obtained from the negative-frequency rows when present and from
/// f(−ω) = conj f(ω) otherwise.
class Tabulated {
 public:
  Tabulated(std::vector<double> omega, std::vector<Complex> values, double f_inf);

  double f_inf() const { return f_inf_; }
  std::span<const double> omega() const { return omega_; }
  std::span<const Complex> values() const { return values_; }
  bool two_sided() const { return neg_re_.size() > 0; }
  /// Interpolated value at a real ω; throws UnsupportedDomainError off the grid.
  Complex at(double omega) const;
  /// Value from the negative-frequency rows only (two-sided tables).
  Complex at_negative(double omega) const;
  /// Positive-frequency knots.
  std::span<const double> positive_knots() const { return pos_re_.knots(); }
  std::span<const double> negative_knots() const { return neg_re_.knots(); }

 private:
  std::vector<double> omega_;
  std::vector<Complex> values_;
  double f_inf_;
  MonotoneCubic pos_re_, pos_im_, neg_re_, neg_im_;
};

/// Frequency-domain response f(ω) satisfying causality, f → f∞ > 0,
/// f(−z̄) = conj f(z) and passivity. Immutable after construction.
class DispersionModel {
 public:
  using Variant = std::variant<LossyDrude, LossyLorentz, GeneralizedLorentzLossless, Tabulated>;

  DispersionModel(LossyDrude m);
  DispersionModel(LossyLorentz m);
  DispersionModel(GeneralizedLorentzLossless m);
  DispersionModel(Tabulated m);

  static DispersionModel constant(double value);

  /// Evaluate on the closed upper half-plane. Lossless poles within
  /// 1e-8·(1 + √ξ) raise PoleError; Tabulated supports the real axis only.
  Complex eval(Complex z) const;
  Complex operator()(Complex z) const { return eval(z); }

  double f_inf() const;
  /// lim_{y→0⁺} f(iy); +∞ for a Drude term or a resonance at ξ = 0, NaN when
  /// the model does not determine it (tabulated data).
  double static_limit() const;
  /// True when Im f ≡ 0 on the real axis away from poles.
  bool lossless() const;
  /// Positive real poles (ω units) of lossless variants, sorted.
  std::vector<double> real_poles() const;
  bool real_axis_only() const { return std::holds_alternative<Tabulated>(model_); }

  const Variant& variant() const { return model_; }
  std::string describe() const;

 private:
  explicit DispersionModel(Variant v);
  Variant model_;
};

inline constexpr double kDefaultCheckTol = 1e-9;

/// min Im f(ω) over n_samples equally spaced ω in the band (plus all tabulated
/// knots inside it). Samples at lossless poles are skipped and listed in notes.
BoundReport check_passivity(const DispersionModel& model, const FrequencyBand& band,
                            int n_samples, double tol = kDefaultCheckTol);

/// max |f(−z̄) − conj f(z)| over the given points of the closed upper
/// half-plane. For tabulated models the negative-frequency rows are compared
/// against the positive ones; one-sided tables satisfy the identity by
/// construction and the report says so.
BoundReport check_symmetry(const DispersionModel& model, std::span<const Complex> samples,
                           double tol = kDefaultCheckTol);

struct LoadOptions {
  /// Reject rows with ω > 0 and Im f < −tol.
  bool enforce_passivity = true;
  double tol = kDefaultCheckTol;
};

/// Read a CSV file with header `omega,re_f,im_f` and a `# f_inf=<value>`
/// comment line. Errors carry the 1-based line number.
DispersionModel load_tabulated(const std::filesystem::path& path, const LoadOptions& opt = {});
DispersionModel parse_tabulated(std::string_view text, const LoadOptions& opt = {});

}  // namespace pbounds
