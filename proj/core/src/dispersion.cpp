#include "pbounds/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pbounds/errors.hpp"

namespace pbounds {

FrequencyBand::FrequencyBand(double omega_minus, double omega_plus)
    : omega_minus_(omega_minus),
      omega_plus_(omega_plus),
      x_minus_(omega_minus * omega_minus),
      x_plus_(omega_plus * omega_plus) {
  if (!(omega_minus > 0.0 && omega_plus > omega_minus && std::isfinite(omega_plus)))
    throw DomainError("FrequencyBand: need 0 < omega_minus < omega_plus < inf");
}

FrequencyBand FrequencyBand::from_squared(double x_minus, double x_plus) {
  if (!(x_minus > 0.0 && x_plus > x_minus && std::isfinite(x_plus)))
    throw DomainError("FrequencyBand: need 0 < x_minus < x_plus < inf");
  FrequencyBand b(std::sqrt(x_minus), std::sqrt(x_plus));
  b.x_minus_ = x_minus;
  b.x_plus_ = x_plus;
  return b;
}

namespace {

constexpr double kPoleGuard = 1e-8;

void require_f_inf(double f_inf) {
  if (!(f_inf > 0.0) || !std::isfinite(f_inf))
    throw DomainError("dispersion model: f_inf must be finite and > 0");
}

void check_upper(Complex z) {
  if (!is_finite(z)) throw DomainError("dispersion model: non-finite frequency");
  if (z.imag() < 0.0) throw DomainError("dispersion model: evaluation below the real axis");
}

// Real poles z = ±√ξ of a lossless resonance (ξ ≥ 0).
void guard_pole(Complex z, double xi) {
  const double root = std::sqrt(xi);
  const double zone = kPoleGuard * (1.0 + root);
  for (double p : {root, -root}) {
    if (std::abs(z - Complex(p, 0.0)) < zone) {
      std::ostringstream msg;
      msg << "evaluation at lossless pole omega = " << p;
      throw PoleError(msg.str(), p);
    }
  }
}

Complex eval_drude(const LossyDrude& m, Complex z) {
  const Complex denom = z * z + Complex(0.0, m.gamma) * z;
  if (m.gamma == 0.0) guard_pole(z, 0.0);
  else if (std::abs(z) < kPoleGuard) throw PoleError("Drude model evaluated at z = 0", 0.0);
  return m.f_inf * (1.0 - m.omega_p * m.omega_p / denom);
}

Complex eval_lorentz(const LossyLorentz& m, Complex z) {
  Complex f = m.f_inf;
  for (const auto& t : m.terms) {
    if (t.gamma == 0.0) guard_pole(z, t.xi);
    else if (t.xi == 0.0 && std::abs(z) < kPoleGuard)
      throw PoleError("Lorentz term with xi = 0 evaluated at z = 0", 0.0);
    f -= t.A / (z * z - t.xi + Complex(0.0, t.gamma) * z);
  }
  return f;
}

Complex eval_lossless(const GeneralizedLorentzLossless& m, Complex z) {
  Complex f = m.f_inf;
  for (const auto& t : m.terms) {
    guard_pole(z, t.xi);
    f -= t.A / (z * z - t.xi);
  }
  return f;
}

}  // namespace

DispersionModel::DispersionModel(Variant v) : model_(std::move(v)) {}

DispersionModel::DispersionModel(LossyDrude m) : model_(m) {
  require_f_inf(m.f_inf);
  if (!(m.omega_p >= 0.0) || !(m.gamma >= 0.0))
    throw DomainError("LossyDrude: omega_p and gamma must be >= 0");
}

DispersionModel::DispersionModel(LossyLorentz m) : model_(m) {
  require_f_inf(m.f_inf);
  for (const auto& t : m.terms)
    if (!(t.A > 0.0) || !(t.xi >= 0.0) || !(t.gamma >= 0.0))
      throw DomainError("LossyLorentz: need A > 0, xi >= 0, gamma >= 0");
}

DispersionModel::DispersionModel(GeneralizedLorentzLossless m) : model_(m) {
  require_f_inf(m.f_inf);
  for (const auto& t : m.terms)
    if (!(t.A > 0.0) || !(t.xi >= 0.0))
      throw DomainError("GeneralizedLorentzLossless: need A > 0 and xi >= 0");
}

DispersionModel::DispersionModel(Tabulated m) : model_(std::move(m)) {}

DispersionModel DispersionModel::constant(double value) {
  return DispersionModel(GeneralizedLorentzLossless{value, {}});
}

Complex DispersionModel::eval(Complex z) const {
  check_upper(z);
  return std::visit(
      [z](const auto& m) -> Complex {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LossyDrude>) return eval_drude(m, z);
        else if constexpr (std::is_same_v<T, LossyLorentz>) return eval_lorentz(m, z);
        else if constexpr (std::is_same_v<T, GeneralizedLorentzLossless>) return eval_lossless(m, z);
        else {
          if (z.imag() > 0.0)
            throw UnsupportedDomainError(
                "tabulated model: values off the real axis require analytic continuation");
          return m.at(z.real());
        }
      },
      model_);
}

double DispersionModel::f_inf() const {
  return std::visit(
      [](const auto& m) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Tabulated>) return m.f_inf();
        else return m.f_inf;
      },
      model_);
}

double DispersionModel::static_limit() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LossyDrude>) {
          return m.omega_p > 0.0 ? inf : m.f_inf;
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          return std::numeric_limits<double>::quiet_NaN();
        } else {
          double f0 = m.f_inf;
          for (const auto& t : m.terms) {
            if (t.xi == 0.0) return inf;
            f0 += t.A / t.xi;
          }
          return f0;
        }
      },
      model_);
}

bool DispersionModel::lossless() const {
  return std::visit(
      [](const auto& m) -> bool {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LossyDrude>) return m.gamma == 0.0;
        else if constexpr (std::is_same_v<T, LossyLorentz>)
          return std::all_of(m.terms.begin(), m.terms.end(),
                             [](const LorentzTerm& t) { return t.gamma == 0.0; });
        else if constexpr (std::is_same_v<T, GeneralizedLorentzLossless>) return true;
        else
          return std::all_of(m.values().begin(), m.values().end(),
                             [](Complex v) { return v.imag() == 0.0; });
      },
      model_);
}

std::vector<double> DispersionModel::real_poles() const {
  std::vector<double> poles;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LossyDrude>) {
          if (m.omega_p > 0.0) poles.push_back(0.0);
        } else if constexpr (std::is_same_v<T, LossyLorentz>) {
          for (const auto& t : m.terms)
            if (t.gamma == 0.0 || t.xi == 0.0) poles.push_back(std::sqrt(t.xi));
        } else if constexpr (std::is_same_v<T, GeneralizedLorentzLossless>) {
          for (const auto& t : m.terms) poles.push_back(std::sqrt(t.xi));
        }
      },
      model_);
  std::sort(poles.begin(), poles.end());
  poles.erase(std::unique(poles.begin(), poles.end()), poles.end());
  return poles;
}

std::string DispersionModel::describe() const {
  std::ostringstream s;
  s.precision(17);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LossyDrude>) {
          s << "drude(f_inf=" << m.f_inf << ", omega_p=" << m.omega_p << ", gamma=" << m.gamma << ")";
        } else if constexpr (std::is_same_v<T, LossyLorentz>) {
          s << "lorentz(f_inf=" << m.f_inf;
          for (const auto& t : m.terms) s << ", [A=" << t.A << ", xi=" << t.xi << ", gamma=" << t.gamma << "]";
          s << ")";
        } else if constexpr (std::is_same_v<T, GeneralizedLorentzLossless>) {
          if (m.terms.empty()) {
            s << "constant(" << m.f_inf << ")";
          } else {
            s << "lossless_lorentz(f_inf=" << m.f_inf;
            for (const auto& t : m.terms) s << ", [A=" << t.A << ", xi=" << t.xi << "]";
            s << ")";
          }
        } else {
          s << "tabulated(knots=" << m.omega().size() << ", f_inf=" << m.f_inf() << ")";
        }
      },
      model_);
  return s.str();
}

BoundReport check_passivity(const DispersionModel& model, const FrequencyBand& band, int n_samples,
                            double tol) {
  if (n_samples < 2) throw DomainError("check_passivity: n_samples must be >= 2");
  std::vector<double> omegas;
  omegas.reserve(static_cast<std::size_t>(n_samples));
  const double w0 = band.omega_minus(), w1 = band.omega_plus();
  for (int i = 0; i < n_samples; ++i) omegas.push_back(w0 + (w1 - w0) * i / (n_samples - 1));
  if (const auto* tab = std::get_if<Tabulated>(&model.variant())) {
    for (double w : tab->positive_knots())
      if (band.contains(w)) omegas.push_back(w);
    std::sort(omegas.begin(), omegas.end());
    omegas.erase(std::unique(omegas.begin(), omegas.end()), omegas.end());
  }

  BoundReport rep;
  rep.name = "passivity";
  rep.band = band;
  rep.tol = tol;
  double min_im = std::numeric_limits<double>::infinity();
  double argmin = w0;
  std::vector<double> skipped;
  std::vector<Witness> violations;
  for (double w : omegas) {
    Complex f;
    try {
      f = model.eval({w, 0.0});
    } catch (const PoleError&) {
      skipped.push_back(w);
      continue;
    }
    if (f.imag() < min_im) {
      min_im = f.imag();
      argmin = w;
    }
    if (f.imag() < -tol) violations.push_back({w, f.imag()});
  }
  if (!std::isfinite(min_im)) throw PreconditionError("check_passivity: every sample hit a pole");
  rep.lhs = 0.0;
  rep.rhs = min_im;
  rep.finalize();
  rep.witnesses.push_back({argmin, min_im});
  constexpr std::size_t kMaxListed = 16;
  for (std::size_t i = 0; i < violations.size() && i < kMaxListed; ++i)
    if (violations[i].omega != argmin) rep.witnesses.push_back(violations[i]);

  std::ostringstream notes;
  notes.precision(17);
  notes << "min Im f = " << min_im << " at omega = " << argmin << " over " << omegas.size()
        << " samples";
  if (!violations.empty()) {
    notes << "; Im f < -tol at " << violations.size() << " sample(s), first at omega = "
          << violations.front().omega;
  }
  if (!skipped.empty()) {
    notes << "; skipped " << skipped.size() << " sample(s) at lossless poles:";
    for (double w : skipped) notes << ' ' << w;
  }
  rep.notes = notes.str();
  return rep;
}

BoundReport check_symmetry(const DispersionModel& model, std::span<const Complex> samples,
                           double tol) {
  BoundReport rep;
  rep.name = "symmetry";
  rep.tol = tol;
  double worst = 0.0;
  std::ostringstream notes;
  notes.precision(17);

  if (const auto* tab = std::get_if<Tabulated>(&model.variant())) {
    const auto pos = tab->positive_knots();
    rep.band = FrequencyBand(pos.front(), pos.back());
    if (!tab->two_sided()) {
      notes << "one-sided table: f(-omega) = conj f(omega) holds by construction";
    } else {
      std::size_t compared = 0;
      for (double wn : tab->negative_knots()) {
        const double w = -wn;
        if (w < pos.front() || w > pos.back()) continue;
        const double dev = std::abs(tab->at_negative(wn) - std::conj(tab->at(w)));
        ++compared;
        if (dev > worst) {
          worst = dev;
          rep.witnesses = {{wn, dev}};
        }
      }
      notes << "compared " << compared << " negative-frequency rows against conj f(omega)";
    }
  } else {
    if (samples.empty()) throw DomainError("check_symmetry: no sample points");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Complex z : samples) {
      if (z.imag() < 0.0) throw DomainError("check_symmetry: samples must lie in the closed upper half-plane");
      const Complex lhs = model.eval(-std::conj(z));
      const Complex rhs = std::conj(model.eval(z));
      const double dev = std::abs(lhs - rhs);
      if (dev > worst || rep.witnesses.empty()) {
        worst = std::max(worst, dev);
        rep.witnesses = {{std::abs(z), dev}};
      }
      const double r = std::abs(z);
      if (r > 0.0) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    }
    if (hi > lo) rep.band = FrequencyBand(lo, hi);
    notes << "max |f(-conj z) - conj f(z)| over " << samples.size() << " points";
  }
  rep.lhs = worst;
  rep.rhs = 0.0;
  rep.finalize();
  rep.notes = notes.str();
  return rep;
}

}  // namespace pbounds
