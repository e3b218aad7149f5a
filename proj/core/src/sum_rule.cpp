#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pbounds/errors.hpp"
#include "pbounds/grading.hpp"
#include "pbounds/herglotz.hpp"
#include "pbounds/parallel.hpp"
#include "pbounds/quadrature.hpp"

namespace pbounds {

namespace {

// Samples of v(x + iy) on a uniform x-grid for each y, shared by every
// measure evaluated on the same (model, band).
class SumRuleEvaluator {
 public:
  SumRuleEvaluator(const DispersionModel& f, const FrequencyBand& band, const SumRuleOptions& opt)
      : f_(f), band_(band), opt_(opt) {
    if (f.real_axis_only())
      throw UnsupportedDomainError(
          "sum rule: the y -> 0+ limit needs upper half-plane values, which tabulated data "
          "does not provide");
    if (opt.y_seq.size() < 2) throw DomainError("sum rule: need at least two y values");
    for (std::size_t k = 0; k < opt.y_seq.size(); ++k) {
      if (!(opt.y_seq[k] > 0.0) || (k > 0 && !(opt.y_seq[k] < opt.y_seq[k - 1])))
        throw DomainError("sum rule: y sequence must be positive and strictly decreasing");
    }
    const int n = std::max(opt.scan_points, 3);
    xs_.resize(n);
    for (int i = 0; i < n; ++i)
      xs_[i] = band.x_minus() + (band.x_plus() - band.x_minus()) * i / (n - 1);
    re_v_.resize(opt.y_seq.size());
    for (std::size_t k = 0; k < opt.y_seq.size(); ++k) {
      re_v_[k].resize(n);
      for (int i = 0; i < n; ++i) re_v_[k][i] = v(xs_[i], opt.y_seq[k]).real();
    }
  }

  Complex v(double x, double y) const { return herglotz_v(f_, Complex(x, y)); }

  // (1/π) ∫ Im v_m(x + iy) dx over the band, for the k-th y.
  double value_at(std::size_t k, const Measure& m) const {
    const double y = opt_.y_seq[k];
    const double lo = band_.x_minus(), hi = band_.x_plus();
    std::vector<double> centres;
    for (double c : m.critical_points()) add_centres(k, c, centres);
    std::vector<double> pts{lo, hi};
    auto graded = graded_breakpoints(centres, lo, hi, y);
    pts.insert(pts.end(), graded.begin(), graded.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const QuadratureOptions q{.abs_tol = opt_.quad_tol * kPi, .rel_tol = 1e-10, .max_panels = 200000};
    const auto r = integrate([&](double x) { return h_measure(m, v(x, y)).imag(); }, pts, q);
    return r.value / kPi;
  }

  SumRuleReport report(const Measure& m) const {
    SumRuleReport rep;
    rep.band = band_;
    rep.measure_desc = m.describe();
    rep.tol = opt_.tol;
    rep.y_sequence_used = opt_.y_seq;
    for (std::size_t k = 0; k < opt_.y_seq.size(); ++k) rep.values_per_y.push_back(value_at(k, m));
    const auto est = extrapolate_to_zero(opt_.y_seq, rep.values_per_y);
    rep.integral_value = est.value;
    rep.extrapolation_error_estimate = est.error_estimate;
    rep.extrapolation_order = est.order;
    rep.extrapolation_monotone = est.monotone;

    std::ostringstream notes;
    rep.b_minus1 = -m.total_mass() / f_.f_inf();
    const double m0 = m.mass_at_zero();
    const double f0 = f_.static_limit();
    if (m0 == 0.0 || std::isinf(f0)) {
      rep.a_minus1 = 0.0;
    } else if (std::isnan(f0)) {
      rep.a_minus1 = 0.0;
      notes << "f(0) unknown; bound uses m(R)/f_inf only. ";
    } else {
      rep.a_minus1 = -m0 / f0;
    }
    rep.rhs_bound = rep.a_minus1 - rep.b_minus1;
    rep.slack = rep.rhs_bound - rep.integral_value;
    rep.pass = rep.slack >= -rep.tol;
    if (!est.monotone) notes << "per-y values not monotone; extrapolation order fixed at 1. ";
    rep.notes = notes.str();
    if (!rep.notes.empty()) rep.notes.pop_back();
    return rep;
  }

  const SumRuleOptions& options() const { return opt_; }
  const FrequencyBand& band() const { return band_; }

 private:
  // Points where Re v(x + iy) = c (located by bisection between grid samples
  // of opposite sign) and grid-local minima of |Re v − c| that come close to c
  // without crossing.
  void add_centres(std::size_t k, double c, std::vector<double>& out) const {
    const double y = opt_.y_seq[k];
    const auto& rv = re_v_[k];
    const std::size_t n = xs_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double a = rv[i] - c, b = rv[i + 1] - c;
      if (a == 0.0) {
        out.push_back(xs_[i]);
      } else if (a * b < 0.0) {
        double l = xs_[i], r = xs_[i + 1], fl = a;
        for (int it = 0; it < 100 && r - l > 1e-15 * (1.0 + std::abs(l)); ++it) {
          const double mid = 0.5 * (l + r);
          const double fm = v(mid, y).real() - c;
          if ((fm < 0.0) == (fl < 0.0)) {
            l = mid;
            fl = fm;
          } else {
            r = mid;
          }
        }
        out.push_back(0.5 * (l + r));
      }
    }
    const double spacing = xs_[1] - xs_[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double d = std::abs(rv[i] - c);
      if (d < std::abs(rv[i - 1] - c) && d < std::abs(rv[i + 1] - c) &&
          d < 10.0 * spacing * (1.0 + std::abs(rv[i + 1] - rv[i - 1]) / spacing)) {
        out.push_back(golden_max([&](double x) { return -std::abs(v(x, y).real() - c); },
                                 xs_[i - 1], xs_[i + 1], 1e-3 * y));
      }
    }
  }

  const DispersionModel& f_;
  FrequencyBand band_;
  SumRuleOptions opt_;
  std::vector<double> xs_;
  std::vector<std::vector<double>> re_v_;
};

}  // namespace

SumRuleReport sum_rule_integral(const DispersionModel& f, const Measure& m,
                                const FrequencyBand& band, const SumRuleOptions& opt) {
  return SumRuleEvaluator(f, band, opt).report(m);
}

DiracScanResult dirac_sup_scan(const DispersionModel& f, const FrequencyBand& band, double delta,
                               int n_grid, const SumRuleOptions& opt, unsigned threads) {
  if (!(delta > 0.0)) throw DomainError("dirac_sup_scan: delta must be positive");
  if (n_grid < 3) throw DomainError("dirac_sup_scan: need at least 3 grid points");
  const SumRuleEvaluator ev(f, band, opt);
  const std::size_t ny = opt.y_seq.size();

  auto limit_value = [&](double xi) {
    const Measure m = Measure::dirac(xi);
    std::vector<double> vals(ny);
    for (std::size_t k = 0; k < ny; ++k) vals[k] = ev.value_at(k, m);
    return extrapolate_to_zero(opt.y_seq, vals).value;
  };

  DiracScanResult res;
  res.grid.resize(n_grid);
  parallel_for(static_cast<std::size_t>(n_grid), threads, [&](std::size_t i) {
    const double xi = -delta + 2.0 * delta * static_cast<double>(i) / (n_grid - 1);
    res.grid[i] = {xi, limit_value(xi)};
  });

  // ties (within the extrapolation noise) go to the smaller |ξ|
  const double tie = 1e-9;
  std::size_t best = 0;
  for (std::size_t i = 1; i < res.grid.size(); ++i) {
    const auto& [xi, val] = res.grid[i];
    const auto& [bxi, bval] = res.grid[best];
    if (val > bval + tie || (std::abs(val - bval) <= tie && std::abs(xi) < std::abs(bxi))) best = i;
  }
  double xi_star = res.grid[best].first;
  double value = res.grid[best].second;
  const double lo = res.grid[best == 0 ? 0 : best - 1].first;
  const double hi = res.grid[std::min(best + 1, res.grid.size() - 1)].first;
  const double cand = golden_max(limit_value, lo, hi, 1e-6 * delta);
  const double cand_val = limit_value(cand);
  if (cand_val > value + tie) {
    xi_star = cand;
    value = cand_val;
  }
  res.xi_star = xi_star;
  res.report = ev.report(Measure::dirac(xi_star));
  res.value = res.report.integral_value;
  std::ostringstream note;
  note << "sup over dirac(xi), xi in [-" << delta << ", " << delta << "], " << n_grid
       << "-point grid";
  res.report.notes = res.report.notes.empty() ? note.str() : note.str() + "; " + res.report.notes;
  return res;
}

}  // namespace pbounds
