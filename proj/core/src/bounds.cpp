#include "pbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pbounds/errors.hpp"
#include "pbounds/grading.hpp"

namespace pbounds {

ScalarResponse::ScalarResponse(std::function<Complex(Complex)> f, double f_inf, std::string name)
    : eval(std::move(f)), f_inf(f_inf), name(std::move(name)) {
  if (!eval) throw DomainError("ScalarResponse: empty evaluator");
  if (!(f_inf > 0.0)) throw DomainError("ScalarResponse: f_inf must be positive");
}

ScalarResponse::ScalarResponse(const DispersionModel& model)
    : eval([model](Complex z) { return model.eval(z); }),
      f_inf(model.f_inf()),
      name(model.describe()),
      poles(model.real_poles()) {}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  out.back() = b;
  return out;
}

// ω²(Re f(ω) − f∞) non-decreasing over the grid: worst pair ω₀ < ω.
BoundReport pair_report(const ScalarResponse& f, const FrequencyBand& band, int n_grid,
                        double tol, std::string name) {
  if (n_grid < 2) throw DomainError(name + ": n_grid must be at least 2");
  const auto w = linspace(band.omega_minus(), band.omega_plus(), n_grid);
  std::vector<double> g(n_grid);
  double scale = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    g[i] = w[i] * w[i] * (f.eval(w[i]).real() - f.f_inf);
    scale = std::max(scale, std::abs(g[i]));
  }
  BoundReport rep;
  rep.name = std::move(name);
  rep.band = band;
  int arg_max = 0;
  int best_i = 0, best_j = 1;
  double worst = g[0] - g[1];
  for (int j = 1; j < n_grid; ++j) {
    if (g[j - 1] > g[arg_max]) arg_max = j - 1;
    if (g[arg_max] - g[j] > worst) {
      worst = g[arg_max] - g[j];
      best_i = arg_max;
      best_j = j;
    }
  }
  rep.lhs = g[best_i];
  rep.rhs = g[best_j];
  rep.tol = tol * (1.0 + scale);
  rep.witnesses = {{w[best_i], g[best_i]}, {w[best_j], g[best_j]}};
  rep.finalize();
  return rep;
}

}  // namespace

TransparencyResult transparency_bound(const ScalarResponse& f, const FrequencyBand& band,
                                      int n_grid, double tol) {
  for (double p : f.poles)
    if (band.contains(p)) {
      std::ostringstream msg;
      msg << "transparency_bound: pole at omega = " << p << " inside the band";
      throw PreconditionError(msg.str());
    }
  {
    const auto w = linspace(band.omega_minus(), band.omega_plus(), 1024);
    double worst = 0.0, at = w.front();
    for (double om : w) {
      Complex val;
      try {
        val = f.eval(om);
      } catch (const PoleError& e) {
        std::ostringstream msg;
        msg << "transparency_bound: pole at omega = " << e.pole() << " inside the band";
        throw PreconditionError(msg.str());
      }
      if (std::abs(val.imag()) > worst) {
        worst = std::abs(val.imag());
        at = om;
      }
    }
    if (worst > kTransparencyTol * (1.0 + f.f_inf)) {
      std::ostringstream msg;
      msg << "transparency_bound: band is not a transparency window; max |Im f| = " << worst
          << " at omega = " << at;
      throw PreconditionError(msg.str());
    }
  }

  TransparencyResult res;
  res.pairs = pair_report(f, band, n_grid, tol, "transparency_pairs");

  // v′(x) by second-order differences with the stencil inside [x₋, x₊]
  const double xlo = band.x_minus(), xhi = band.x_plus();
  const double hs = 1e-4 * (xhi - xlo);
  auto v = [&](double x) { return x * f.eval(branch_sqrt(Complex(x, 0.0))).real(); };
  const auto xs = linspace(xlo, xhi, n_grid);
  BoundReport& d = res.derivative;
  d.name = "transparency_derivative";
  d.band = band;
  d.lhs = f.f_inf;
  d.rhs = std::numeric_limits<double>::infinity();
  double at = xs.front();
  for (double x : xs) {
    double dv;
    if (x - hs < xlo)
      dv = (-3.0 * v(x) + 4.0 * v(x + hs) - v(x + 2.0 * hs)) / (2.0 * hs);
    else if (x + hs > xhi)
      dv = (3.0 * v(x) - 4.0 * v(x - hs) + v(x - 2.0 * hs)) / (2.0 * hs);
    else
      dv = (v(x + hs) - v(x - hs)) / (2.0 * hs);
    res.derivative_curve.push_back({x, dv});
    if (dv < d.rhs) {
      d.rhs = dv;
      at = x;
    }
  }
  d.tol = tol * (1.0 + f.f_inf);
  d.witnesses = {{std::sqrt(at), d.rhs}};
  d.notes = "v'(x) by finite differences, step " + std::to_string(hs);
  d.finalize();
  return res;
}

BoundReport lossy_level_set_bound(const ScalarResponse& f, const FrequencyBand& band, double delta,
                                  int n_grid, double tol) {
  if (!(delta > 0.0)) throw DomainError("lossy_level_set_bound: delta must be positive");
  if (n_grid < 2) throw DomainError("lossy_level_set_bound: n_grid must be at least 2");
  int poles = 0;
  auto excess = [&](double x) {
    try {
      return std::abs(x * f.eval(branch_sqrt(Complex(x, 0.0)))) - delta;
    } catch (const PoleError&) {
      ++poles;
      return std::numeric_limits<double>::infinity();
    }
  };
  const auto xs = linspace(band.x_minus(), band.x_plus(), n_grid);
  std::vector<double> a(n_grid);
  for (int i = 0; i < n_grid; ++i) a[i] = excess(xs[i]);

  BoundReport rep;
  rep.name = "lossy_level_set";
  rep.band = band;
  double length = 0.0;
  for (int i = 0; i + 1 < n_grid; ++i) {
    const bool in_l = a[i] < 0.0, in_r = a[i + 1] < 0.0;
    if (in_l && in_r) {
      length += xs[i + 1] - xs[i];
    } else if (in_l != in_r) {
      double l = xs[i], r = xs[i + 1];
      for (int it = 0; it < 100 && r - l > 1e-15 * (1.0 + std::abs(l)); ++it) {
        const double m = 0.5 * (l + r);
        if ((excess(m) < 0.0) == in_l)
          l = m;
        else
          r = m;
      }
      const double xc = 0.5 * (l + r);
      length += in_l ? xc - xs[i] : xs[i + 1] - xc;
      rep.witnesses.push_back({std::sqrt(xc), delta});
    }
  }
  rep.lhs = length;
  rep.rhs = 4.0 * delta / f.f_inf;
  rep.tol = tol * (1.0 + rep.rhs);
  std::ostringstream notes;
  notes << "level set |v(x)| < " << delta << " measured on " << n_grid << " points";
  const double full = band.x_plus() - band.x_minus();
  if (std::abs(length - full) <= 1e-12 * full)
    notes << "; set covers the band, so x+ - x- <= 4 delta / f_inf is the check";
  if (poles > 0) notes << "; " << poles << " samples at poles treated as outside the set";
  rep.notes = notes.str();
  rep.finalize();
  return rep;
}

LossyMaxResult lossy_max_bound(const ScalarResponse& f, const FrequencyBand& band, int n_grid,
                               double tol) {
  if (n_grid < 3) throw DomainError("lossy_max_bound: n_grid must be at least 3");
  const auto w = linspace(band.omega_minus(), band.omega_plus(), n_grid);

  auto one = [&](int power, double lhs, std::string name) {
    bool pole = false;
    auto mag = [&](double om) {
      try {
        return std::pow(om, power) * std::abs(f.eval(om));
      } catch (const PoleError&) {
        pole = true;
        return std::numeric_limits<double>::infinity();
      }
    };
    std::vector<double> vals(n_grid);
    int best = 0;
    for (int i = 0; i < n_grid; ++i) {
      vals[i] = mag(w[i]);
      if (vals[i] > vals[best]) best = i;
    }
    double at = w[best], top = vals[best];
    if (std::isfinite(top)) {
      const double lo = w[std::max(best - 1, 0)], hi = w[std::min(best + 1, n_grid - 1)];
      const double c = golden_max(mag, lo, hi, 1e-12 * (hi - lo + 1.0));
      const double vc = mag(c);
      if (vc > top) {
        top = vc;
        at = c;
      }
    }
    BoundReport rep;
    rep.name = std::move(name);
    rep.band = band;
    rep.lhs = lhs;
    rep.rhs = top;
    rep.tol = tol * (1.0 + lhs);
    rep.witnesses = {{at, top}};
    if (pole) rep.notes = "pole in band; maximum unbounded";
    rep.finalize();
    return rep;
  };

  const double wm = band.omega_minus(), wp = band.omega_plus();
  LossyMaxResult res;
  res.v_form = one(2, 0.25 * (band.x_plus() - band.x_minus()) * f.f_inf, "lossy_max_v");
  res.vtilde_form = one(1, 0.5 * (wp - wm) * f.f_inf, "lossy_max_vtilde");
  return res;
}

BoundReport monotone_difference_check(const ScalarResponse& f, const FrequencyBand& band,
                                      int n_grid, double tol) {
  return pair_report(f, band, n_grid, tol, "monotone_difference");
}

}  // namespace pbounds
