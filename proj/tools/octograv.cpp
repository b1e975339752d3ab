// octograv command-line front end.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "octograv/commands.hpp"

namespace {

using namespace octograv;

struct ScenarioFlags {
  std::string config;
  std::optional<std::string> scenario;
  std::vector<std::string> params;
  std::optional<std::size_t> points;
  std::vector<std::string> at;
  std::optional<std::string> provider;
  std::optional<double> h;
  std::optional<double> h2;
  std::optional<double> kappa;
};

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("OCTOGRAV_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("OCTOGRAV_SEED is not an unsigned integer: ") + s);
  }
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("bad coordinate '" + item + "' in --at");
    }
  }
  return out;
}

// Precedence: flags, then scenario file, then OCTOGRAV_SEED, then defaults.
ScenarioSpec build_spec(const ScenarioFlags& f, std::optional<std::uint64_t> seed_flag) {
  ScenarioSpec spec;
  bool seed_from_file = false;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw UsageError("cannot open scenario file '" + f.config + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("scenario file: ") + e.what());
    }
    apply_scenario_json(j, spec);
    seed_from_file = j.contains("seed");
  }
  if (f.scenario) spec.name = *f.scenario;
  for (const auto& kv : f.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value");
    try {
      spec.parameters[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--param value is not a number: " + kv);
    }
  }
  if (f.points) spec.points = *f.points;
  if (!f.at.empty()) {
    spec.explicit_points.clear();
    for (const auto& p : f.at) spec.explicit_points.push_back(parse_point(p));
  }
  if (f.provider) {
    spec.provider = *f.provider == "fd" ? ProviderKind::finite_difference : ProviderKind::analytic;
  }
  if (f.h) spec.fd.step = *f.h;
  if (f.h2) spec.fd.second_step = *f.h2;
  if (f.kappa) spec.kappa = *f.kappa;
  if (seed_flag) {
    spec.seed = *seed_flag;
  } else if (!seed_from_file) {
    if (const auto s = env_seed()) spec.seed = *s;
  }
  if (spec.provider == ProviderKind::finite_difference &&
      (!(spec.fd.step > 0.0) || !(spec.fd.second_step > 0.0))) {
    throw UsageError("--h and --h2 must be positive");
  }
  validate_scenario(spec);
  return spec;
}

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f) {
  cmd->add_option("--config", f.config, "JSON scenario file; flags override it")
      ->check(CLI::ExistingFile);
  cmd->add_option("--scenario", f.scenario,
                  "flat-4d|schwarzschild|de-sitter|flat-8d|diagonal-warped-8d|random-smooth-8d");
  cmd->add_option("--param", f.params, "scenario parameter key=value (M, H, A)");
  cmd->add_option("--points", f.points, "number of seeded sample points");
  cmd->add_option("--at", f.at, "explicit point x0,x1,... (repeatable)");
  cmd->add_option("--provider", f.provider, "derivative provider")
      ->check(CLI::IsMember({"analytic", "fd"}));
  cmd->add_option("--h", f.h, "finite-difference step");
  cmd->add_option("--h2", f.h2, "finite-difference step for second derivatives");
  cmd->add_option("--kappa", f.kappa, "coupling c^4/(16 pi G)");
}

int run(int argc, char** argv) {
  CLI::App app{"octograv: complexified division-algebra gravity toolkit"};
  app.set_help_flag("--help", "print help");  // -h is taken by the --h step option
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out_format;
  std::optional<std::string> fault;

  auto* verify = app.add_subcommand("verify-algebra", "run algebra and table invariant suites");
  std::size_t samples = 10000;
  verify->add_option("--seed", seed, "RNG seed (fallback: OCTOGRAV_SEED)");
  verify->add_option("--samples", samples, "random samples per law")->check(CLI::PositiveNumber);
  verify->add_option("--out", out_format, "text|json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--inject-fault", fault)->group("");

  auto* dump = app.add_subcommand("dump-tables", "print nonzero structure constants");
  std::string table;
  dump->add_option("--table", table, "eps3|psi|phi|eps4|chiL|chiR")->required();
  dump->add_option("--out", out_format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* lag = app.add_subcommand("lagrangian", "evaluate a Lagrangian density on a scenario");
  ScenarioFlags lag_flags;
  std::string form = "dd4";
  lag->add_option("--form", form, "dd4|vierbein4|eh4|chi8")
      ->check(CLI::IsMember({"dd4", "vierbein4", "eh4", "chi8"}));
  lag->add_option("--seed", seed, "RNG seed (fallback: OCTOGRAV_SEED)");
  lag->add_option("--out", out_format, "json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  add_scenario_flags(lag, lag_flags);

  auto* cross = app.add_subcommand("crosscheck", "compare the three 4D densities pointwise");
  ScenarioFlags cross_flags;
  std::optional<double> tolerance;
  cross->add_option("--seed", seed, "RNG seed (fallback: OCTOGRAV_SEED)");
  cross->add_option("--tolerance", tolerance, "relative agreement tolerance");
  cross->add_option("--out", out_format, "text|json")->check(CLI::IsMember({"text", "json"}));
  add_scenario_flags(cross, cross_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      VerifyOptions opt;
      opt.suite.seed = seed ? *seed : env_seed().value_or(kDefaultSeed);
      opt.suite.samples = samples;
      opt.format = parse_format(out_format.empty() ? "text" : out_format);
      opt.inject_fault = fault;
      return cmd_verify_algebra(opt, std::cout);
    }
    if (dump->parsed()) {
      return cmd_dump_tables(table, parse_format(out_format.empty() ? "text" : out_format),
                             std::cout);
    }
    if (lag->parsed()) {
      LagrangianOptions opt;
      opt.scenario = build_spec(lag_flags, seed);
      opt.form = parse_form(form);
      opt.format = parse_format(out_format.empty() ? "json" : out_format);
      return cmd_lagrangian(opt, std::cout);
    }
    if (cross->parsed()) {
      CrosscheckOptions opt;
      opt.scenario = build_spec(cross_flags, seed);
      opt.tolerance = tolerance;
      opt.format = parse_format(out_format.empty() ? "text" : out_format);
      return cmd_crosscheck(opt, std::cout);
    }
  } catch (const UsageError& e) {
    std::cerr << "octograv: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegenerateFrame& e) {
    std::cerr << "octograv: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "octograv: invariant failure: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
