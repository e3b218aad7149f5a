#include "serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace pbounds::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json to_json(const FrequencyBand& band) {
  return json{{"omega_minus", band.omega_minus()},
              {"omega_plus", band.omega_plus()},
              {"x_minus", band.x_minus()},
              {"x_plus", band.x_plus()}};
}

json to_json(const BoundReport& r) {
  json w = json::array();
  for (const auto& x : r.witnesses) w.push_back({{"omega", x.omega}, {"value", x.value}});
  return json{{"name", r.name}, {"band", to_json(r.band)}, {"lhs", r.lhs},
              {"rhs", r.rhs},   {"slack", r.slack},       {"tol", r.tol},
              {"pass", r.pass}, {"witnesses", w},         {"notes", r.notes}};
}

json to_json(const SumRuleReport& r) {
  return json{{"band", to_json(r.band)},
              {"measure", r.measure_desc},
              {"integral_value", r.integral_value},
              {"a_minus1", r.a_minus1},
              {"b_minus1", r.b_minus1},
              {"rhs_bound", r.rhs_bound},
              {"slack", r.slack},
              {"tol", r.tol},
              {"pass", r.pass},
              {"y_sequence", r.y_sequence_used},
              {"values_per_y", r.values_per_y},
              {"extrapolation_error_estimate", r.extrapolation_error_estimate},
              {"extrapolation_order", r.extrapolation_order},
              {"extrapolation_monotone", r.extrapolation_monotone},
              {"notes", r.notes}};
}

void write_json(const std::filesystem::path& path, const json& report) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << report.dump(2) << '\n';
  if (!os) throw ConfigError("write failed: " + path.string());
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  if (!os) throw ConfigError("write failed: " + path.string());
}

}  // namespace pbounds::cli
