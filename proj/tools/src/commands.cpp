#include "commands.hpp"

#include <charconv>
#include <cmath>

#include "pbounds/analytic_polarizability.hpp"
#include "pbounds/bounds.hpp"
#include "pbounds/dispersion.hpp"
#include "pbounds/envelope.hpp"
#include "pbounds/errors.hpp"
#include "pbounds/fd_solver.hpp"
#include "pbounds/herglotz.hpp"
#include "pbounds/kramers_kronig.hpp"
#include "pbounds/polarizability.hpp"
#include "pbounds/scene.hpp"
#include "pbounds_cli/cli.hpp"

namespace pbounds::cli {

namespace fs = std::filesystem;

namespace {

json base_report(const RunContext& ctx) {
  return json{{"schema", kSchemaVersion}, {"command", ctx.command}};
}

void log(const RunContext& ctx, const std::string& line) {
  if (ctx.log) *ctx.log << line << '\n';
}

double get_number(const json& cfg, const std::string& key, double fallback) {
  if (!cfg.contains(key)) return fallback;
  const json& v = cfg.at(key);
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

double get_positive(const json& cfg, const std::string& key, double fallback) {
  const double v = get_number(cfg, key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("config key '" + key + "' must be > 0");
  return v;
}

int get_int(const json& cfg, const std::string& key, int fallback, int min_value) {
  if (!cfg.contains(key)) return fallback;
  const json& v = cfg.at(key);
  if (!v.is_number_integer() || v.get<long long>() < min_value)
    throw ConfigError("config key '" + key + "' must be an integer >= " + std::to_string(min_value));
  return v.get<int>();
}

double tolerance(const RunContext& ctx, double fallback) {
  if (ctx.tol) return *ctx.tol;
  return get_positive(ctx.config, "tol", fallback);
}

std::pair<double, double> get_pair(const json& cfg, const std::string& key) {
  const json& v = cfg.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError("config key '" + key + "' must be a two-number array");
  return {v[0].get<double>(), v[1].get<double>()};
}

FrequencyBand get_band(const json& cfg) {
  try {
    if (cfg.contains("band")) {
      const auto [lo, hi] = get_pair(cfg, "band");
      return FrequencyBand(lo, hi);
    }
    if (cfg.contains("band_squared")) {
      const auto [lo, hi] = get_pair(cfg, "band_squared");
      return FrequencyBand::from_squared(lo, hi);
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid band: ") + e.what());
  }
  throw ConfigError("config needs 'band' [omega_minus, omega_plus] or 'band_squared' [x_minus, x_plus]");
}

// Tabulated data is loaded leniently so that a non-passive table reaches the
// passivity check instead of failing at load time.
DispersionModel get_model(const RunContext& ctx, const json& spec) {
  if (!spec.is_object()) throw ConfigError("model must be a JSON object");
  json m = spec;
  if (m.value("type", "") == "tabulated" && !m.contains("strict")) m["strict"] = false;
  return parse_model_json(m.dump(), ctx.config_dir);
}

DispersionModel get_model(const RunContext& ctx) {
  if (!ctx.config.contains("model")) throw ConfigError("config needs a 'model' object");
  return get_model(ctx, ctx.config.at("model"));
}

struct CoatedSphereConfig {
  double a = 0.5, b = 1.0, eps_core = 3.0, eps0 = 1.0;
  DispersionModel shell = LossyDrude{1.0, 1.0, 0.0};
};

CoatedSphereConfig get_coated_sphere(const RunContext& ctx, const json& cfg) {
  CoatedSphereConfig c;
  c.a = get_number(cfg, "a", c.a);
  c.b = get_positive(cfg, "b", c.b);
  c.eps_core = get_positive(cfg, "eps_core", c.eps_core);
  c.eps0 = get_positive(cfg, "eps0", c.eps0);
  if (!(c.a >= 0.0 && c.a < c.b)) throw ConfigError("coated sphere needs 0 <= a < b");
  if (cfg.contains("shell")) c.shell = get_model(ctx, cfg.at("shell"));
  return c;
}

Eigen::Vector3cd get_field(const json& cfg) {
  Eigen::Vector3cd E = Eigen::Vector3cd::UnitX();
  if (!cfg.contains("E0")) return E;
  const json& v = cfg.at("E0");
  if (!v.is_array() || v.size() != 3) throw ConfigError("'E0' must be a three-number array");
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw ConfigError("'E0' must be a three-number array");
    E[i] = v[i].get<double>();
  }
  if (E.norm() == 0.0) throw ConfigError("'E0' must be non-zero");
  return E;
}

std::string cell(double v) { return format_double(v); }

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

fs::path out_file(const RunContext& ctx, const std::string& name) { return ctx.out_dir / name; }

int finish(const RunContext& ctx, json report, bool pass) {
  const int code = pass ? kExitPass : kExitCheckFailed;
  report["pass"] = pass;
  report["exit_code"] = code;
  write_json(out_file(ctx, ctx.command + ".json"), report);
  log(ctx, ctx.command + ": " + (pass ? "pass" : "FAIL"));
  return code;
}

BoundReport precondition_report(const std::string& name, const FrequencyBand& band,
                                const std::string& why) {
  BoundReport r;
  r.name = name;
  r.band = band;
  r.lhs = r.rhs = r.slack = std::nan("");
  r.pass = false;
  r.notes = "precondition failed: " + why;
  return r;
}

// Re f reconstructed from Im f against the model's own Re f at the grid
// points inside the band.
BoundReport kramers_kronig_check(const RunContext& ctx, const DispersionModel& model,
                                 const FrequencyBand& band) {
  const json& cfg = ctx.config;
  std::vector<double> omega;
  std::vector<double> re, im;
  if (const auto* tab = std::get_if<Tabulated>(&model.variant())) {
    for (double w : tab->positive_knots()) {
      const Complex f = tab->at(w);
      omega.push_back(w);
      re.push_back(f.real());
      im.push_back(f.imag());
    }
  } else {
    double lo = 1e-2 * band.omega_minus(), hi = 1e2 * band.omega_plus();
    if (cfg.contains("kk_range")) std::tie(lo, hi) = get_pair(cfg, "kk_range");
    if (!(lo > 0.0 && hi > lo)) throw ConfigError("'kk_range' must satisfy 0 < lo < hi");
    const int n = get_int(cfg, "kk_samples", 2000, 16);
    for (int i = 0; i < n; ++i) {
      const double w = lo * std::pow(hi / lo, double(i) / (n - 1));
      const Complex f = model.eval(w);
      omega.push_back(w);
      re.push_back(f.real());
      im.push_back(f.imag());
    }
  }
  if (omega.size() < 16) throw ConfigError("kramers_kronig: need at least 16 positive samples");
  const KramersKronig kk(omega, im, model.f_inf());
  BoundReport r;
  r.name = "kramers_kronig";
  r.band = band;
  r.rhs = get_positive(cfg, "kk_tol", 1e-3);
  r.tol = 0.0;
  // interior 80% of the sample range on a log scale
  const double llo = std::log(omega.front()), lhi = std::log(omega.back());
  const double a = std::exp(llo + 0.1 * (lhi - llo)), b = std::exp(lhi - 0.1 * (lhi - llo));
  std::size_t used = 0;
  double worst_tail = 0.0;
  for (std::size_t i = 1; i + 1 < omega.size(); ++i) {
    const double w = omega[i];
    if (w < a || w > b || !band.contains(w)) continue;
    const KramersKronigResult res = kk.real_part(w);
    const double err = std::abs(res.value - re[i]) / (1.0 + std::abs(re[i]));
    worst_tail = std::max(worst_tail, res.tail_bound);
    ++used;
    if (err > r.lhs || r.witnesses.empty()) {
      r.lhs = std::max(r.lhs, err);
      r.witnesses = {{w, err}};
    }
  }
  if (used == 0) throw ConfigError("kramers_kronig: no samples inside the band and the interior range");
  r.finalize();
  r.notes = "max |Re f_kk - Re f| / (1 + |Re f|) over " + std::to_string(used) +
            " samples; tail bound " + format_double(worst_tail);
  return r;
}

}  // namespace

MeasureSpec parse_measure_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("measure spec must be kind:value, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string num = spec.substr(colon + 1);
  double value = 0.0;
  const auto res = std::from_chars(num.data(), num.data() + num.size(), value);
  if (num.empty() || res.ec != std::errc() || res.ptr != num.data() + num.size() || !std::isfinite(value))
    throw ConfigError("measure spec has a malformed number: '" + spec + "'");
  MeasureSpec m{MeasureSpec::Kind::dirac, value};
  if (kind == "dirac") return m;
  if (kind == "uniform")
    m.kind = MeasureSpec::Kind::uniform;
  else if (kind == "scan")
    m.kind = MeasureSpec::Kind::scan;
  else
    throw ConfigError("unknown measure kind '" + kind + "' (dirac, uniform, scan)");
  if (!(value > 0.0)) throw ConfigError("measure half-width must be > 0: '" + spec + "'");
  return m;
}

int cmd_passivity_check(const RunContext& ctx) {
  const DispersionModel model = get_model(ctx);
  const FrequencyBand band = get_band(ctx.config);
  const double tol = tolerance(ctx, kDefaultCheckTol);
  const int samples = get_int(ctx.config, "samples", 1024, 2);

  const BoundReport passivity = check_passivity(model, band, samples, tol);
  std::vector<Complex> pts;
  for (int i = 0; i < 16; ++i) {
    const double w = band.omega_minus() + (band.omega_plus() - band.omega_minus()) * i / 15.0;
    for (double th : {kPi / 6, kPi / 3, kPi / 2}) pts.push_back(std::polar(w, th));
  }
  const BoundReport symmetry = check_symmetry(model, pts, tol);

  json rep = base_report(ctx);
  rep["model"] = model.describe();
  rep["band"] = to_json(band);
  rep["checks"] = json::array({to_json(passivity), to_json(symmetry)});
  return finish(ctx, rep, passivity.pass && symmetry.pass);
}

int cmd_sum_rule(const RunContext& ctx) {
  std::string spec_text;
  if (ctx.measure)
    spec_text = *ctx.measure;
  else if (ctx.config.contains("measure") && ctx.config.at("measure").is_string())
    spec_text = ctx.config.at("measure").get<std::string>();
  else
    throw ConfigError("sum-rule needs --measure or a 'measure' string in the config");
  const MeasureSpec spec = parse_measure_spec(spec_text);
  const DispersionModel model = get_model(ctx);
  const FrequencyBand band = get_band(ctx.config);

  SumRuleOptions opt;
  opt.tol = tolerance(ctx, opt.tol);
  opt.quad_tol = get_positive(ctx.config, "quad_tol", opt.quad_tol);
  opt.scan_points = get_int(ctx.config, "scan_points", opt.scan_points, 16);
  if (ctx.config.contains("y_sequence")) {
    const json& ys = ctx.config.at("y_sequence");
    if (!ys.is_array() || ys.empty()) throw ConfigError("'y_sequence' must be a non-empty array");
    opt.y_seq.clear();
    for (const json& y : ys) {
      if (!y.is_number()) throw ConfigError("'y_sequence' entries must be numbers");
      opt.y_seq.push_back(y.get<double>());
    }
  }

  json rep = base_report(ctx);
  rep["model"] = model.describe();
  rep["measure_spec"] = spec_text;
  SumRuleReport report;
  if (spec.kind == MeasureSpec::Kind::scan) {
    const int n_grid = get_int(ctx.config, "scan_grid", 512, 3);
    const DiracScanResult scan = dirac_sup_scan(model, band, spec.value, n_grid, opt);
    report = scan.report;
    rep["xi_star"] = scan.xi_star;
    rep["scan_value"] = scan.value;
    std::vector<std::vector<std::string>> rows;
    for (const auto& [xi, v] : scan.grid) rows.push_back({cell(xi), cell(v)});
    write_csv(out_file(ctx, "sum-rule-scan.csv"), {"xi", "value"}, rows);
  } else {
    const Measure m = spec.kind == MeasureSpec::Kind::dirac ? Measure::dirac(spec.value)
                                                            : Measure::uniform(spec.value);
    report = sum_rule_integral(model, m, band, opt);
  }
  rep["report"] = to_json(report);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < report.y_sequence_used.size(); ++i)
    rows.push_back({cell(report.y_sequence_used[i]), cell(report.values_per_y[i])});
  write_csv(out_file(ctx, "sum-rule-per-y.csv"), {"y", "value"}, rows);
  return finish(ctx, rep, report.pass);
}

int cmd_bound_check(const RunContext& ctx) {
  const json& cfg = ctx.config;
  const FrequencyBand band = get_band(cfg);
  const double tol = tolerance(ctx, kDefaultCheckTol);

  std::optional<DispersionModel> model;
  std::optional<ScalarResponse> response;
  json rep = base_report(ctx);
  if (cfg.contains("coated_sphere")) {
    const CoatedSphereConfig c = get_coated_sphere(ctx, cfg.at("coated_sphere"));
    const auto alpha = PolarizabilityResponse::coated_sphere(c.a, c.b, c.eps_core, c.shell, c.eps0);
    response = contract(alpha, get_field(cfg));
    rep["response"] = response->name;
  } else {
    model = get_model(ctx);
    response = ScalarResponse(*model);
    rep["response"] = model->describe();
  }
  const bool lossless = model ? model->lossless() : false;

  std::vector<std::string> checks;
  if (cfg.contains("checks")) {
    const json& c = cfg.at("checks");
    if (!c.is_array()) throw ConfigError("'checks' must be an array of names");
    for (const json& s : c) {
      if (!s.is_string()) throw ConfigError("'checks' must be an array of names");
      checks.push_back(s.get<std::string>());
    }
  } else if (lossless) {
    checks = {"transparency"};
  } else {
    checks = {"level_set", "max"};
    if (model) checks.push_back("kramers_kronig");
  }

  std::vector<BoundReport> reports;
  std::vector<Witness> curve;
  // bounds presuppose passivity; a model that fails it gets no bound evaluated
  if (model) {
    const BoundReport passivity = check_passivity(*model, band, get_int(cfg, "samples", 1024, 2), tol);
    reports.push_back(passivity);
    if (!passivity.pass) {
      checks.clear();
      rep["skipped"] = "bounds not evaluated: passivity check failed";
    }
  }
  for (const std::string& name : checks) {
    if (name == "transparency") {
      try {
        TransparencyResult t = transparency_bound(*response, band, get_int(cfg, "grid", 1024, 8), tol);
        reports.push_back(t.pairs);
        reports.push_back(t.derivative);
        curve = std::move(t.derivative_curve);
      } catch (const PreconditionError& e) {
        reports.push_back(precondition_report("transparency", band, e.what()));
      }
    } else if (name == "level_set") {
      const double delta = get_positive(cfg, "delta", 1.0);
      reports.push_back(lossy_level_set_bound(*response, band, delta, get_int(cfg, "grid", 2048, 8), tol));
    } else if (name == "max") {
      const LossyMaxResult r = lossy_max_bound(*response, band, get_int(cfg, "grid", 2048, 8), tol);
      reports.push_back(r.v_form);
      reports.push_back(r.vtilde_form);
    } else if (name == "monotone") {
      reports.push_back(monotone_difference_check(*response, band, get_int(cfg, "grid", 1024, 8), tol));
    } else if (name == "kramers_kronig") {
      if (!model) throw ConfigError("kramers_kronig needs a 'model'");
      reports.push_back(kramers_kronig_check(ctx, *model, band));
    } else {
      throw ConfigError("unknown check '" + name + "' (transparency, level_set, max, monotone, kramers_kronig)");
    }
  }

  bool pass = true;
  json arr = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const BoundReport& r : reports) {
    pass = pass && r.pass;
    arr.push_back(to_json(r));
    for (const Witness& w : r.witnesses) rows.push_back({r.name, cell(w.omega), cell(w.value)});
  }
  rep["band"] = to_json(band);
  rep["checks"] = arr;
  write_csv(out_file(ctx, "bound-check-witnesses.csv"), {"check", "omega", "value"}, rows);
  if (!curve.empty()) {
    std::vector<std::vector<std::string>> crow;
    for (const Witness& w : curve) crow.push_back({cell(w.omega), cell(w.value)});
    write_csv(out_file(ctx, "bound-check-derivative.csv"), {"x", "v_prime"}, crow);
  }
  return finish(ctx, rep, pass);
}

namespace {

SceneSpec get_scene(const RunContext& ctx, const json& v) {
  if (v.is_string()) {
    fs::path p = v.get<std::string>();
    if (p.is_relative()) p = ctx.config_dir / p;
    return load_scene(p);
  }
  if (v.is_object()) return parse_scene_json(v.dump(), ctx.config_dir);
  throw ConfigError("'scene' must be a path or an object");
}

FdOptions get_fd_options(const json& cfg) {
  FdOptions opt;
  if (!cfg.contains("solver")) return opt;
  const json& s = cfg.at("solver");
  if (!s.is_object()) throw ConfigError("'solver' must be an object");
  opt.rel_tol = get_positive(s, "rel_tol", opt.rel_tol);
  opt.max_iter = get_int(s, "max_iter", opt.max_iter, 1);
  opt.subcell_samples = get_int(s, "subcell_samples", opt.subcell_samples, 1);
  const std::string fa = s.value("face_average", "subcell");
  if (fa == "subcell")
    opt.face_average = FdOptions::FaceAverage::subcell;
  else if (fa == "harmonic")
    opt.face_average = FdOptions::FaceAverage::harmonic;
  else
    throw ConfigError("'face_average' must be subcell or harmonic");
  return opt;
}

json matrix_json(const Eigen::Matrix3cd& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

std::string structure_of(const Eigen::Matrix3cd& a, double tol) {
  const double scale = a.norm();
  if (scale == 0.0) return "zero";
  Eigen::Matrix3cd off = a;
  off.diagonal().setZero();
  if (off.norm() > tol * scale) return "general";
  const Complex mean = a.diagonal().mean();
  const double spread = (a.diagonal().array() - mean).abs().maxCoeff();
  return spread <= tol * std::abs(mean) ? "scalar_identity" : "diagonal";
}

// Closed-form α for a single centred sphere or ellipsoid of constant ε.
std::optional<Eigen::Matrix3d> analytic_reference(const SceneSpec& scene) {
  if (scene.regions.size() != 1) return std::nullopt;
  const Region& r = scene.regions.front();
  const double* eps = std::get_if<double>(&r.material);
  if (!eps) return std::nullopt;
  if (const auto* s = std::get_if<SphereShape>(&r.shape)) {
    if (s->center.norm() != 0.0 || !(*eps > scene.background_eps)) return std::nullopt;
    return sphere_alpha_inf(s->radius, *eps, scene.background_eps);
  }
  if (const auto* e = std::get_if<EllipsoidShape>(&r.shape)) {
    if (e->center.norm() != 0.0) return std::nullopt;
    return ellipsoid_alpha(e->semiaxes, *eps, scene.background_eps).alpha;
  }
  return std::nullopt;
}

}  // namespace

int cmd_cloak_demo(const RunContext& ctx) {
  const json& cfg = ctx.config;
  const CoatedSphereConfig c = get_coated_sphere(ctx, cfg);
  const double tol = tolerance(ctx, 1e-8);
  std::optional<SceneSpec> scene;
  if (cfg.contains("scene")) {
    scene = get_scene(ctx, cfg.at("scene"));
    scene->validate();
  }

  double omega0 = 0.0;
  std::string omega0_source;
  if (cfg.contains("omega0")) {
    omega0 = get_positive(cfg, "omega0", 1.0);
    omega0_source = "config";
  } else {
    auto [lo, hi] = cfg.contains("search") ? get_pair(cfg, "search") : std::pair{2.0, 4.0};
    omega0 = design_cloak_frequency(c.a, c.b, c.eps_core, c.shell, c.eps0, lo, hi);
    omega0_source = "design";
  }
  const FrequencyBand band = cfg.contains("band") ? get_band(cfg) : FrequencyBand(2.0, 3.5);
  const auto alpha = PolarizabilityResponse::coated_sphere(c.a, c.b, c.eps_core, c.shell, c.eps0);
  const Eigen::Vector3cd E0 = get_field(cfg);
  const EnvelopeResult env = cloaking_envelope(alpha, E0, band, omega0, get_int(cfg, "grid", 512, 8), tol);

  json rep = base_report(ctx);
  rep["geometry"] = {{"a", c.a}, {"b", c.b}, {"eps_core", c.eps_core}, {"eps0", c.eps0},
                     {"shell", c.shell.describe()}};
  rep["omega0"] = omega0;
  rep["omega0_source"] = omega0_source;
  rep["omega0_in_band"] = band.contains(omega0);
  rep["residual_at_omega0"] = env.residual_at_omega0;
  rep["band"] = to_json(band);
  rep["checks"] = json::array({to_json(env.above), to_json(env.below), to_json(env.tensor)});
  rep["min_eigenvalue"] = env.min_eigenvalue;
  rep["max_eigenvalue"] = env.max_eigenvalue;
  rep["reciprocity_warning"] = env.reciprocity_warning;
  rep["notes"] = env.notes;

  if (scene && cfg.value("fd_check", false)) {
    const AlphaAssembly fd = assemble_alpha(*scene, omega0, get_fd_options(cfg));
    rep["fd_alpha_at_omega0"] = matrix_json(fd.alpha);
    rep["fd_max_monopole_ratio"] = fd.max_monopole_ratio;
  }

  std::vector<std::vector<std::string>> rows;
  for (const EnvelopePoint& p : env.curve) rows.push_back({cell(p.omega), cell(p.value), cell(p.lo), cell(p.hi)});
  write_csv(out_file(ctx, "cloak-envelope.csv"), {"omega", "f", "lower", "upper"}, rows);
  return finish(ctx, rep, env.pass());
}

int cmd_polarizability(const RunContext& ctx) {
  const json& cfg = ctx.config;
  if (!cfg.contains("scene")) throw ConfigError("polarizability needs a 'scene'");
  SceneSpec scene = get_scene(ctx, cfg.at("scene"));
  if (cfg.contains("grid")) scene.grid_n = get_int(cfg, "grid", scene.grid_n, 1);
  scene.validate();
  const FdOptions opt = get_fd_options(cfg);
  const double structure_tol = get_positive(cfg, "structure_tol", 1e-2);
  std::vector<double> freqs{1.0};
  if (cfg.contains("frequencies")) {
    const json& f = cfg.at("frequencies");
    if (!f.is_array() || f.empty()) throw ConfigError("'frequencies' must be a non-empty array");
    freqs.clear();
    for (const json& w : f) {
      if (!w.is_number() || !(w.get<double>() > 0.0)) throw ConfigError("'frequencies' must be positive numbers");
      freqs.push_back(w.get<double>());
    }
  }
  const auto reference = analytic_reference(scene);

  json rep = base_report(ctx);
  rep["grid"] = scene.grid_n;
  rep["box_half_width"] = scene.box_half_width;
  json sweep = json::array();
  std::vector<std::vector<std::string>> rows;
  bool pass = true;
  for (double w : freqs) {
    json entry{{"omega", w}};
    try {
      const AlphaAssembly a = assemble_alpha(scene, w, opt);
      entry["alpha"] = matrix_json(a.alpha);
      entry["symmetry_deviation"] = a.symmetry_deviation;
      entry["max_monopole_ratio"] = a.max_monopole_ratio;
      entry["iterations"] = {a.iterations[0], a.iterations[1], a.iterations[2]};
      entry["loss_offset"] = a.loss_offset_used;
      entry["structure"] = structure_of(a.alpha, structure_tol);
      if (reference) {
        entry["reference_alpha"] = matrix_json(reference->cast<Complex>());
        entry["reference_relative_error"] = (a.alpha - reference->cast<Complex>()).norm() / reference->norm();
      }
      std::vector<std::string> row{cell(w)};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          row.push_back(cell(a.alpha(i, j).real()));
          row.push_back(cell(a.alpha(i, j).imag()));
        }
      row.push_back(cell(a.symmetry_deviation));
      row.push_back(cell(a.max_monopole_ratio));
      rows.push_back(row);
    } catch (const QualityError& e) {
      entry["error"] = e.what();
      pass = false;
    } catch (const SolverError& e) {
      entry["error"] = e.what();
      pass = false;
    }
    sweep.push_back(entry);
    log(ctx, "omega " + format_double(w) + " done");
  }
  rep["sweep"] = sweep;
  std::vector<std::string> header{"omega"};
  const char* ax = "xyz";
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const std::string n = std::string("a_") + ax[i] + ax[j];
      header.push_back(n + "_re");
      header.push_back(n + "_im");
    }
  header.push_back("symmetry_deviation");
  header.push_back("max_monopole_ratio");
  write_csv(out_file(ctx, "polarizability.csv"), header, rows);
  return finish(ctx, rep, pass);
}

}  // namespace pbounds::cli
