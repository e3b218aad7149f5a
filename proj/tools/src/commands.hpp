#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "serialize.hpp"

namespace pbounds::cli {

struct RunContext {
  std::string command;
  json config;
  std::filesystem::path config_dir;
  std::filesystem::path out_dir;
  std::optional<double> tol;
  std::optional<std::string> measure;
  std::ostream* log = nullptr;
};

/// Each command writes its report under ctx.out_dir and returns the exit code.
int cmd_passivity_check(const RunContext& ctx);
int cmd_sum_rule(const RunContext& ctx);
int cmd_bound_check(const RunContext& ctx);
int cmd_cloak_demo(const RunContext& ctx);
int cmd_polarizability(const RunContext& ctx);

/// Parses `dirac:<xi>`, `uniform:<delta>` or `scan:<delta>`.
struct MeasureSpec {
  enum class Kind { dirac, uniform, scan } kind;
  double value;
};
MeasureSpec parse_measure_spec(const std::string& spec);

}  // namespace pbounds::cli
