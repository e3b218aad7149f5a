#include "pbounds/scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pbounds/errors.hpp"

namespace pbounds {

using nlohmann::json;

bool shape_contains(const Shape& s, const Eigen::Vector3d& x) {
  return std::visit(
      [&](const auto& sh) -> bool {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, SphereShape>) {
          return (x - sh.center).norm() < sh.radius;
        } else if constexpr (std::is_same_v<T, ShellShape>) {
          const double r = (x - sh.center).norm();
          return r > sh.inner && r < sh.outer;
        } else {
          return (x - sh.center).cwiseQuotient(sh.semiaxes).squaredNorm() < 1.0;
        }
      },
      s);
}

double shape_extent(const Shape& s) {
  return std::visit(
      [](const auto& sh) -> double {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, SphereShape>)
          return sh.center.cwiseAbs().maxCoeff() + sh.radius;
        else if constexpr (std::is_same_v<T, ShellShape>)
          return sh.center.cwiseAbs().maxCoeff() + sh.outer;
        else
          return (sh.center.cwiseAbs() + sh.semiaxes).maxCoeff();
      },
      s);
}

Complex material_eps(const Material& m, Complex omega) {
  if (const auto* c = std::get_if<double>(&m)) return *c;
  return std::get<DispersionModel>(m).eval(omega);
}

double SceneSpec::device_radius() const {
  double r = 0.0;
  for (const auto& reg : regions) {
    r = std::max(r, std::visit(
                        [](const auto& sh) -> double {
                          using T = std::decay_t<decltype(sh)>;
                          if constexpr (std::is_same_v<T, SphereShape>)
                            return sh.center.norm() + sh.radius;
                          else if constexpr (std::is_same_v<T, ShellShape>)
                            return sh.center.norm() + sh.outer;
                          else
                            return sh.center.norm() + sh.semiaxes.maxCoeff();
                        },
                        reg.shape));
  }
  return r;
}

void SceneSpec::validate() const {
  if (!(box_half_width > 0.0)) throw DomainError("scene: box half-width must be positive");
  if (grid_n < 16) throw DomainError("scene: grid must have at least 16 cells per axis");
  if (!(background_eps > 0.0)) throw DomainError("scene: background_eps must be positive");
  const double h = spacing();
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& reg = regions[i];
    std::visit(
        [&](const auto& sh) {
          using T = std::decay_t<decltype(sh)>;
          if constexpr (std::is_same_v<T, SphereShape>) {
            if (!(sh.radius > 0.0)) throw DomainError("scene: sphere radius must be positive");
          } else if constexpr (std::is_same_v<T, ShellShape>) {
            if (!(sh.inner >= 0.0 && sh.outer > sh.inner))
              throw DomainError("scene: shell needs 0 <= inner < outer");
            if (sh.outer - sh.inner < 3.0 * h) {
              std::ostringstream msg;
              msg << "scene: shell thickness " << sh.outer - sh.inner << " is below three cells ("
                  << 3.0 * h << "); refine the grid";
              throw RefusalError(msg.str());
            }
          } else {
            if (!(sh.semiaxes.minCoeff() > 0.0))
              throw DomainError("scene: ellipsoid semiaxes must be positive");
          }
        },
        reg.shape);
    if (shape_extent(reg.shape) > 0.5 * box_half_width * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "scene: region " << i << " reaches " << shape_extent(reg.shape)
          << "; shapes must stay within half the box half-width (" << 0.5 * box_half_width << ")";
      throw DomainError(msg.str());
    }
    if (const auto* c = std::get_if<double>(&reg.material); c && !(*c > 0.0 || *c < 0.0))
      throw DomainError("scene: constant permittivity must be non-zero");
  }
}

namespace {

double num(const json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("missing key '") + key + "'");
  if (!j.at(key).is_number()) throw DomainError(std::string("key '") + key + "' must be a number");
  return j.at(key).get<double>();
}

double num_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? num(j, key) : fallback;
}

Eigen::Vector3d vec3(const json& j, const char* key, Eigen::Vector3d fallback) {
  if (!j.contains(key)) return fallback;
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != 3) throw DomainError(std::string("key '") + key + "' must be a 3-array");
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!a[i].is_number()) throw DomainError(std::string("key '") + key + "' must hold numbers");
    v[i] = a[i].get<double>();
  }
  return v;
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw LoadError(std::string("invalid JSON: ") + e.what(), 0);
  }
}

DispersionModel model_from(const json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw DomainError("model must be a JSON object");
  const std::string type = j.value("type", "");
  if (type == "drude") {
    return LossyDrude{num(j, "f_inf"), num(j, "omega_p"), num_or(j, "gamma", 0.0)};
  } else if (type == "lorentz" || type == "lossless_lorentz") {
    if (!j.contains("terms") || !j.at("terms").is_array())
      throw DomainError("model: 'terms' must be an array");
    if (type == "lorentz") {
      LossyLorentz m{num(j, "f_inf"), {}};
      for (const auto& t : j.at("terms")) m.terms.push_back({num(t, "A"), num(t, "xi"), num_or(t, "gamma", 0.0)});
      return m;
    }
    GeneralizedLorentzLossless m{num(j, "f_inf"), {}};
    for (const auto& t : j.at("terms")) m.terms.push_back({num(t, "A"), num(t, "xi")});
    return m;
  } else if (type == "constant") {
    return DispersionModel::constant(num(j, "value"));
  } else if (type == "tabulated") {
    if (!j.contains("path") || !j.at("path").is_string())
      throw DomainError("model: tabulated needs a 'path' string");
    std::filesystem::path p = j.at("path").get<std::string>();
    if (p.is_relative()) p = base / p;
    LoadOptions opt;
    opt.enforce_passivity = j.value("strict", true);
    return load_tabulated(p, opt);
  }
  throw DomainError("model: unknown type '" + type + "'");
}

}  // namespace

DispersionModel parse_model_json(std::string_view json_text, const std::filesystem::path& base_dir) {
  return model_from(parse(json_text), base_dir);
}

SceneSpec parse_scene_json(std::string_view json_text, const std::filesystem::path& base_dir) {
  const json j = parse(json_text);
  if (!j.is_object()) throw DomainError("scene must be a JSON object");
  SceneSpec s;
  s.box_half_width = num(j, "box");
  if (!j.contains("grid") || !j.at("grid").is_number_integer())
    throw DomainError("scene: 'grid' must be an integer");
  s.grid_n = j.at("grid").get<int>();
  s.background_eps = num_or(j, "background_eps", 1.0);
  if (j.contains("regions")) {
    if (!j.at("regions").is_array()) throw DomainError("scene: 'regions' must be an array");
    for (const auto& r : j.at("regions")) {
      if (!r.contains("shape") || !r.contains("material"))
        throw DomainError("scene: each region needs 'shape' and 'material'");
      const auto& sh = r.at("shape");
      const std::string type = sh.value("type", "");
      Region reg;
      const Eigen::Vector3d c = vec3(sh, "center", Eigen::Vector3d::Zero());
      if (type == "sphere")
        reg.shape = SphereShape{c, num(sh, "radius")};
      else if (type == "shell")
        reg.shape = ShellShape{c, num(sh, "inner"), num(sh, "outer")};
      else if (type == "ellipsoid")
        reg.shape = EllipsoidShape{c, vec3(sh, "semiaxes", Eigen::Vector3d::Ones())};
      else
        throw DomainError("scene: unknown shape type '" + type + "'");
      const auto& mat = r.at("material");
      if (mat.is_number())
        reg.material = mat.get<double>();
      else
        reg.material = model_from(mat, base_dir);
      s.regions.push_back(std::move(reg));
    }
  }
  s.validate();
  return s;
}

SceneSpec load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open scene file " + path.string(), 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene_json(ss.str(), path.parent_path());
}

}  // namespace pbounds
