#include "pbounds_cli/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "pbounds/errors.hpp"
#include "pbounds/parallel.hpp"

namespace pbounds::cli {

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string config;
  std::string out = ".";
  unsigned threads = 0;
  std::optional<double> tol;
  std::optional<std::string> measure;
};

json read_config(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  try {
    json j = json::parse(ss.str());
    if (!j.is_object()) throw ConfigError("config must be a JSON object: " + path.string());
    return j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw ConfigError("output directory unavailable: " + dir.string());
  const fs::path probe = dir / ".write-probe";
  {
    std::ofstream os(probe);
    if (!os) throw ConfigError("output directory not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

// Best effort: an error report next to where the normal one would go.
void write_error_report(const RunContext& ctx, const std::string& kind, const std::string& message) {
  if (ctx.out_dir.empty()) return;
  try {
    json rep{{"schema", kSchemaVersion}, {"command", ctx.command}, {"pass", false},
             {"exit_code", kExitUsage}, {"error", {{"kind", kind}, {"message", message}}}};
    write_json(ctx.out_dir / (ctx.command + ".json"), rep);
  } catch (...) {
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Passivity bounds toolkit", "passive-bounds"};
  app.require_subcommand(1);
  Flags flags;

  const std::map<std::string, std::function<int(const RunContext&)>> commands{
      {"passivity-check", cmd_passivity_check}, {"sum-rule", cmd_sum_rule},
      {"bound-check", cmd_bound_check},         {"cloak-demo", cmd_cloak_demo},
      {"polarizability", cmd_polarizability}};
  const std::map<std::string, std::string> help{
      {"passivity-check", "Check Im f >= 0 and f(-conj z) = conj f(z) for a model"},
      {"sum-rule", "Evaluate the sum-rule integral for a measure"},
      {"bound-check", "Evaluate transparency, lossy and Kramers-Kronig bounds"},
      {"cloak-demo", "Design a coated-sphere cloak and check its envelope"},
      {"polarizability", "Finite-difference polarizability sweep of a scene"}};

  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", flags.config, "JSON config file")->required();
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--threads", flags.threads, "Worker threads (0 = auto)");
    sub->add_option("--tol", flags.tol, "Pass tolerance")->check(CLI::PositiveNumber);
    if (name == "sum-rule")
      sub->add_option("--measure", flags.measure, "dirac:<xi> | uniform:<delta> | scan:<delta>");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  RunContext ctx;
  ctx.command = app.get_subcommands().front()->get_name();
  ctx.tol = flags.tol;
  ctx.measure = flags.measure;
  ctx.log = &out;
  set_default_threads(flags.threads);

  try {
    ensure_writable(flags.out);
    ctx.out_dir = flags.out;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto usage_error = [&](const std::string& kind, const std::string& message) {
    err << "error: " << message << '\n';
    write_error_report(ctx, kind, message);
    return kExitUsage;
  };
  try {
    const fs::path config_path = flags.config;
    ctx.config = read_config(config_path);
    ctx.config_dir = config_path.parent_path();
    return commands.at(ctx.command)(ctx);
  } catch (const ConfigError& e) {
    return usage_error("config", e.what());
  } catch (const LoadError& e) {
    return usage_error("load", std::string(e.what()) + " (line " + std::to_string(e.line()) + ")");
  } catch (const RefusalError& e) {
    return usage_error("refusal", e.what());
  } catch (const DomainError& e) {
    return usage_error("domain", e.what());
  } catch (const UnsupportedDomainError& e) {
    return usage_error("unsupported", e.what());
  } catch (const fs::filesystem_error& e) {
    return usage_error("io", e.what());
  } catch (const Error& e) {
    // numerical failure while running a check: the check did not pass
    err << "error: " << e.what() << '\n';
    try {
      json rep{{"schema", kSchemaVersion}, {"command", ctx.command}, {"pass", false},
               {"exit_code", kExitCheckFailed}, {"error", {{"kind", "numerical"}, {"message", e.what()}}}};
      write_json(ctx.out_dir / (ctx.command + ".json"), rep);
    } catch (...) {
    }
    return kExitCheckFailed;
  }
}

}  // namespace pbounds::cli
