#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "pbounds/dispersion.hpp"
#include "pbounds/errors.hpp"

namespace pbounds {

Tabulated::Tabulated(std::vector<double> omega, std::vector<Complex> values, double f_inf)
    : omega_(std::move(omega)), values_(std::move(values)), f_inf_(f_inf) {
  if (!(f_inf_ > 0.0) || !std::isfinite(f_inf_)) throw DomainError("Tabulated: f_inf must be > 0");
  if (omega_.size() != values_.size()) throw DomainError("Tabulated: size mismatch");
  std::vector<double> px, pr, pi, nx, nr, ni;
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    if (i > 0 && !(omega_[i] > omega_[i - 1]))
      throw DomainError("Tabulated: omega must be strictly increasing");
    if (omega_[i] > 0.0) {
      px.push_back(omega_[i]);
      pr.push_back(values_[i].real());
      pi.push_back(values_[i].imag());
    } else if (omega_[i] < 0.0) {
      nx.push_back(omega_[i]);
      nr.push_back(values_[i].real());
      ni.push_back(values_[i].imag());
    } else {
      throw DomainError("Tabulated: omega = 0 is not allowed");
    }
  }
  if (px.size() < 2) throw DomainError("Tabulated: need at least two positive-frequency rows");
  pos_re_ = MonotoneCubic(px, pr);
  pos_im_ = MonotoneCubic(std::move(px), std::move(pi));
  if (nx.size() >= 2) {
    neg_re_ = MonotoneCubic(nx, nr);
    neg_im_ = MonotoneCubic(std::move(nx), std::move(ni));
  } else if (!nx.empty()) {
    throw DomainError("Tabulated: need zero or at least two negative-frequency rows");
  }
}

Complex Tabulated::at(double w) const {
  if (w >= pos_re_.lo() && w <= pos_re_.hi()) return {pos_re_(w), pos_im_(w)};
  if (w < 0.0) {
    if (two_sided() && w >= neg_re_.lo() && w <= neg_re_.hi()) return at_negative(w);
    if (-w >= pos_re_.lo() && -w <= pos_re_.hi()) return std::conj(at(-w));
  }
  std::ostringstream msg;
  msg << "tabulated model: omega = " << w << " outside the tabulated range";
  throw UnsupportedDomainError(msg.str());
}

Complex Tabulated::at_negative(double w) const {
  if (!two_sided() || w < neg_re_.lo() || w > neg_re_.hi())
    throw UnsupportedDomainError("tabulated model: no negative-frequency data at this omega");
  return {neg_re_(w), neg_im_(w)};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cols.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cols;
}

}  // namespace

DispersionModel parse_tabulated(std::string_view text, const LoadOptions& opt) {
  std::optional<double> f_inf;
  int col_omega = -1, col_re = -1, col_im = -1;
  bool have_header = false;
  std::vector<double> omega;
  std::vector<Complex> values;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line =
        trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF)
      line.remove_prefix(3);  // UTF-8 BOM
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      if (body.rfind("f_inf", 0) == 0) {
        auto eq = body.find('=');
        double v;
        if (eq == std::string_view::npos || !parse_double(body.substr(eq + 1), v))
          throw LoadError("malformed f_inf comment", line_no);
        f_inf = v;
      }
      continue;
    }
    const auto cols = split(line);
    if (!have_header) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "omega") col_omega = static_cast<int>(i);
        else if (cols[i] == "re_f") col_re = static_cast<int>(i);
        else if (cols[i] == "im_f") col_im = static_cast<int>(i);
      }
      if (col_omega < 0 || col_re < 0 || col_im < 0)
        throw LoadError("header must name the columns omega,re_f,im_f", line_no);
      have_header = true;
      continue;
    }
    const int needed = std::max({col_omega, col_re, col_im});
    if (static_cast<int>(cols.size()) <= needed) throw LoadError("missing columns", line_no);
    double w, re, im;
    if (!parse_double(cols[col_omega], w) || !parse_double(cols[col_re], re) ||
        !parse_double(cols[col_im], im))
      throw LoadError("non-numeric value", line_no);
    if (w == 0.0) throw LoadError("omega = 0 is not allowed", line_no);
    if (!omega.empty() && !(w > omega.back()))
      throw LoadError("omega must be strictly increasing (duplicate or out-of-order row)", line_no);
    if (opt.enforce_passivity && w > 0.0 && im < -opt.tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "passivity violated: Im f = " << im << " < 0 at omega = " << w;
      throw LoadError(msg.str(), line_no);
    }
    omega.push_back(w);
    values.emplace_back(re, im);
  }
  if (!have_header) throw LoadError("missing header omega,re_f,im_f", line_no);
  if (!f_inf) throw LoadError("missing '# f_inf=<value>' header comment", line_no);
  try {
    return DispersionModel(Tabulated(std::move(omega), std::move(values), *f_inf));
  } catch (const DomainError& e) {
    throw LoadError(e.what(), line_no);
  }
}

DispersionModel load_tabulated(const std::filesystem::path& path, const LoadOptions& opt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open tabulated file " + path.string(), 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tabulated(ss.str(), opt);
}

}  // namespace pbounds
