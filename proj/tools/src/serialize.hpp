#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbounds/band.hpp"
#include "pbounds/herglotz.hpp"
#include "pbounds/report.hpp"

namespace pbounds::cli {

using nlohmann::json;

/// Raised for malformed configs and unusable paths (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

json to_json(const FrequencyBand& band);
json to_json(const BoundReport& r);
json to_json(const SumRuleReport& r);

/// Writes `report` (keys sorted, non-finite numbers as null) with a trailing newline.
void write_json(const std::filesystem::path& path, const json& report);

/// Plain CSV; cells are written verbatim.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace pbounds::cli
