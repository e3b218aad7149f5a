#include "pbounds/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pbounds/errors.hpp"
#include "pbounds/quadrature.hpp"

namespace pbounds {

Density::Density(double lo, double hi, double height, std::function<double(double)> rho,
                 std::string label)
    : lo_(lo), hi_(hi), height_(height), rho_(std::move(rho)), label_(std::move(label)) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("Density: need a finite interval lo < hi");
}

Density Density::uniform(double lo, double hi, double height) {
  if (!(height >= 0.0)) throw DomainError("Density: height must be >= 0");
  return Density(lo, hi, height, nullptr, "uniform");
}

Density Density::callable(double lo, double hi, std::function<double(double)> rho, std::string label) {
  if (!rho) throw DomainError("Density: empty callable");
  return Density(lo, hi, 0.0, std::move(rho), std::move(label));
}

double Density::operator()(double xi) const {
  if (xi < lo_ || xi > hi_) return 0.0;
  return rho_ ? rho_(xi) : height_;
}

double Density::total() const {
  if (!rho_) return height_ * (hi_ - lo_);
  return integrate([this](double x) { return rho_(x); }, lo_, hi_, {.abs_tol = 1e-13}).value;
}

Measure::Measure(std::vector<Atom> atoms, std::optional<Density> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
  for (const auto& a : atoms_)
    if (!(a.mass > 0.0) || !std::isfinite(a.position))
      throw DomainError("Measure: atoms need finite positions and positive masses");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });
}

Measure Measure::dirac(double xi, double mass) { return Measure({{xi, mass}}); }

Measure Measure::uniform(double delta) {
  if (!(delta > 0.0)) throw DomainError("Measure::uniform: delta must be > 0");
  return Measure({}, Density::uniform(-delta, delta, 1.0 / (2.0 * delta)));
}

double Measure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mass;
  if (density_) m += density_->total();
  return m;
}

double Measure::atom_mass_at(double x, double tol) const {
  double m = 0.0;
  for (const auto& a : atoms_)
    if (std::abs(a.position - x) < tol) m += a.mass;
  return m;
}

double Measure::support_lo() const {
  double lo = std::numeric_limits<double>::infinity();
  if (!atoms_.empty()) lo = atoms_.front().position;
  if (density_) lo = std::min(lo, density_->lo());
  return lo;
}

double Measure::support_hi() const {
  double hi = -std::numeric_limits<double>::infinity();
  if (!atoms_.empty()) hi = atoms_.back().position;
  if (density_) hi = std::max(hi, density_->hi());
  return hi;
}

bool Measure::in_M_delta(double delta, double tol) const {
  if (atoms_.empty() && !density_) return false;
  return support_lo() >= -delta - tol && support_hi() <= delta + tol &&
         std::abs(total_mass() - 1.0) <= tol;
}

std::vector<double> Measure::critical_points() const {
  std::vector<double> pts;
  for (const auto& a : atoms_) pts.push_back(a.position);
  if (density_) {
    pts.push_back(density_->lo());
    pts.push_back(density_->hi());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::string Measure::describe() const {
  std::ostringstream s;
  s.precision(17);
  const char* sep = "";
  if (atoms_.size() == 1 && !density_ && atoms_[0].mass == 1.0) {
    s << "dirac(" << atoms_[0].position << ")";
    return s.str();
  }
  if (atoms_.empty() && density_ && density_->is_uniform() && density_->lo() == -density_->hi() &&
      std::abs(density_->total() - 1.0) < 1e-15) {
    s << "uniform(" << density_->hi() << ")";
    return s.str();
  }
  for (const auto& a : atoms_) {
    s << sep << a.mass << "*dirac(" << a.position << ")";
    sep = " + ";
  }
  if (density_) s << sep << density_->label() << "[" << density_->lo() << ", " << density_->hi() << "]";
  return s.str();
}

HerglotzTriple::HerglotzTriple(double a, double b, Measure m) : alpha(a), beta(b), measure(std::move(m)) {
  if (!(alpha >= 0.0)) throw DomainError("HerglotzTriple: alpha must be >= 0");
  double shift = 0.0;
  for (const auto& at : measure.atoms()) shift += at.mass * at.position / (1.0 + at.position * at.position);
  if (const auto& d = measure.density()) {
    if (d->is_uniform()) {
      shift += d->height() * 0.5 * std::log((1.0 + d->hi() * d->hi()) / (1.0 + d->lo() * d->lo()));
    } else {
      shift += integrate([&](double x) { return (*d)(x) * x / (1.0 + x * x); }, d->lo(), d->hi(),
                         {.abs_tol = 1e-13})
                   .value;
    }
  }
  gamma_shift = beta - shift;
}

}  // namespace pbounds
