#ifndef VORTEX_CLI_HPP
#define VORTEX_CLI_HPP

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vortex/config.hpp"
#include "vortex/experiment.hpp"
#include "vortex/outputs.hpp"

namespace vortex::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_or_io = 2 };

inline void print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-44s observed=%-12s bound=%s%s\n",
                  c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL"), c.name.c_str(),
                  format_double(c.observed).substr(0, 12).c_str(), format_double(c.bound).c_str(), "");
    out << line;
  }
}

inline void print_stats_summary(std::ostream& out, const std::vector<TrajectoryStats>& stats) {
  out << "paths: " << stats.size() << " (blow-ups: " << blowup_count(stats) << ")\n";
  if (stats.empty()) return;
  for (std::size_t f = 0; f < functional_names.size(); ++f) {
    const auto m = functional_moments(stats, f);
    char line[160];
    std::snprintf(line, sizeof line, "  %-14s mean=%.6g stderr=%.3g\n", functional_names[f], m.mean, m.stderr_mean);
    out << line;
  }
}

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> paths;
  std::optional<std::string> out_dir;
  bool force = false;
  bool print_config = false;
  bool quiet = false;
};

inline int run_command(const RunArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(a.config);
    if (a.seed) cfg.mc.base_seed = *a.seed;
    if (a.paths) cfg.mc.n_paths = *a.paths;
    if (a.out_dir) cfg.output.directory = *a.out_dir;
    validate(cfg);
  } catch (const std::exception& e) {
    err << "vortex: " << e.what() << "\n";
    return usage_or_io;
  }
  if (a.print_config) {
    out << resolved_dump(cfg);
    return ok;
  }
  const fs::path dir = cfg.output.directory;
  const bool existed = fs::exists(dir);
  try {
    prepare_output_dir(dir, a.force);
  } catch (const std::exception& e) {
    err << "vortex: " << e.what() << "\n";
    return usage_or_io;
  }
  ExperimentResult result;
  try {
    result = run_experiment(cfg, dir, [&](const std::string& s) {
      if (!a.quiet) err << "vortex: " << s << "\n";
    });
    write_outputs(dir, result.stats, result.checks, make_manifest(cfg, result), resolved_dump(cfg));
  } catch (const std::exception& e) {
    err << "vortex: " << e.what() << "\n";
    std::error_code ec;
    if (!existed) fs::remove_all(dir, ec);
    return usage_or_io;
  }
  print_stats_summary(out, result.stats);
  print_checks(out, result.checks);
  out << "outputs: " << dir.string() << "\n";
  return all_passed(result.checks) ? ok : check_failed;
}

struct IdentityArgs {
  int grid = 64;
  std::size_t trials = 100;
  std::uint64_t seed = 7;
  bool refinement = true;
  std::optional<std::string> out_dir;
  bool force = false;
};

inline int check_identities_command(const IdentityArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<CheckResult> checks;
  try {
    const SpectralGrid g(a.grid);
    if (a.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (a.out_dir) prepare_output_dir(*a.out_dir, a.force);
    checks = identity_suite(g, a.trials, a.seed);
    if (a.refinement)
      for (auto& c : identity_refinement(g, a.trials, a.seed)) checks.push_back(std::move(c));
    if (a.out_dir) {
      Manifest m{fnv1a_hex("identities:" + std::to_string(a.grid) + ":" + std::to_string(a.trials)), a.seed, 0,
                 a.trials, {}};
      write_outputs(*a.out_dir, {}, checks, m);
    }
  } catch (const std::exception& e) {
    err << "vortex: " << e.what() << "\n";
    return usage_or_io;
  }
  out << checks_json(checks);
  return all_passed(checks) ? ok : check_failed;
}

inline int report_command(const std::string& dir, std::ostream& out, std::ostream& err) {
  std::vector<CheckResult> checks;
  std::vector<TrajectoryStats> stats;
  try {
    const auto j = nlohmann::json::parse(read_file(fs::path(dir) / "checks.json"));
    if (!j.is_array()) throw OutputError("checks.json: expected an array");
    for (const auto& c : j) checks.push_back(check_from_json(c));
    if (fs::exists(fs::path(dir) / "stats.csv")) stats = parse_stats_csv(read_file(fs::path(dir) / "stats.csv"));
    if (fs::exists(fs::path(dir) / "manifest.json")) {
      const auto m = nlohmann::json::parse(read_file(fs::path(dir) / "manifest.json"));
      out << "config hash: " << m.value("config_hash", std::string("?")) << "\n";
    }
  } catch (const std::exception& e) {
    err << "vortex: " << e.what() << "\n";
    return usage_or_io;
  }
  print_stats_summary(out, stats);
  print_checks(out, checks);
  return all_passed(checks) ? ok : check_failed;
}

/// Entry point shared by the executable and the tests.
inline int main(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Pseudo-spectral stochastic Navier-Stokes simulator and estimate checks", "vortex"};
  app.set_version_flag("--version", std::string(tool_version));
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the Monte-Carlo experiment described by a config file");
  run_cmd->add_option("--config", run.config, "JSON experiment config")->required();
  run_cmd->add_option("--seed", run.seed, "Override mc.base_seed");
  run_cmd->add_option("--paths", run.paths, "Override mc.n_paths");
  run_cmd->add_option("--out", run.out_dir, "Override output.directory");
  run_cmd->add_flag("--force", run.force, "Write into a non-empty output directory");
  run_cmd->add_flag("--print-config", run.print_config, "Print the resolved config and exit");
  run_cmd->add_flag("--quiet", run.quiet, "Suppress progress messages");

  auto* check_cmd = app.add_subcommand("check", "Run a standalone check suite");
  check_cmd->require_subcommand(1);
  IdentityArgs ident;
  bool no_refinement = false;
  auto* ident_cmd = check_cmd->add_subcommand("identities", "Operator identity suite on random fields");
  ident_cmd->add_option("--grid", ident.grid, "Modes per dimension")->capture_default_str();
  ident_cmd->add_option("--trials", ident.trials, "Random trials")->capture_default_str();
  ident_cmd->add_option("--seed", ident.seed, "Seed")->capture_default_str();
  ident_cmd->add_option("--out", ident.out_dir, "Also write checks.json and manifest.json here");
  ident_cmd->add_flag("--force", ident.force, "Write into a non-empty output directory");
  ident_cmd->add_flag("--no-refinement", no_refinement, "Skip the N -> 2N refinement study");

  std::string report_dir;
  auto* report_cmd = app.add_subcommand("report", "Summarize stored outputs");
  report_cmd->add_option("--dir", report_dir, "Output directory of a previous run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << tool_version << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "vortex: " << e.what() << "\n";
    return usage_or_io;
  }
  if (*run_cmd) return run_command(run, out, err);
  if (*ident_cmd) {
    ident.refinement = !no_refinement;
    return check_identities_command(ident, out, err);
  }
  if (*report_cmd) return report_command(report_dir, out, err);
  return usage_or_io;
}

}  // namespace vortex::cli

#endif  // VORTEX_CLI_HPP
