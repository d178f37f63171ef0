#ifndef VORTEX_EXPERIMENT_HPP
#define VORTEX_EXPERIMENT_HPP

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "vortex/config.hpp"
#include "vortex/estimates.hpp"
#include "vortex/identities.hpp"
#include "vortex/initial.hpp"
#include "vortex/outputs.hpp"
#include "vortex/snapshot.hpp"

namespace vortex {

struct ExperimentResult {
  std::vector<TrajectoryStats> stats;
  std::vector<CheckResult> checks;
  std::vector<std::string> snapshot_files;
};

using ProgressFn = std::function<void(const std::string&)>;

namespace detail {

inline std::string snapshot_name(std::size_t path, std::size_t step, const char* field) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshots/p%05zu_s%07zu_%s.vspd", path, step, field);
  return buf;
}

inline std::string snapshot_bytes(const ScalarField& f) {
  std::ostringstream os(std::ios::binary);
  write_snapshot(os, to_physical(f));
  return os.str();
}

}  // namespace detail

/// Executes every enabled part of the experiment. Snapshots go under
/// `snapshot_dir` when the config asks for them and a directory is given.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const fs::path& snapshot_dir = {},
                                       const ProgressFn& progress = {}) {
  const auto note = [&](const std::string& s) {
    if (progress) progress(s);
  };
  const auto grid = cfg.grid.grid();
  const NoiseModel model(cfg.noise.spec(), grid);
  const auto xi0 = initial_vorticity(grid, cfg.initial);
  const auto v0 = biot_savart(xi0);
  const auto seed = cfg.mc.base_seed;
  ExperimentResult result;

  HolderOptions holder;
  if (const auto& z = cfg.checks.zeta_regularity) holder = z->params(cfg.noise.roughness).holder(z->stride);

  note("monte carlo: " + std::to_string(cfg.mc.n_paths) + " paths");
  const bool snapshots = cfg.output.snapshot_stride > 0 && !snapshot_dir.empty();
  std::mutex files_mutex;
  if (snapshots) fs::create_directories(snapshot_dir / "snapshots");
  result.stats = map_paths(cfg.mc.n_paths, [&](std::size_t i) {
    TrajectoryOptions t;
    t.seed = seed;
    t.path = i;
    t.q = cfg.checks.q;
    t.holder = holder;
    if (snapshots) {
      t.snapshot_stride = cfg.output.snapshot_stride;
      t.on_snapshot = [&, i](std::size_t step, const CoupledState& s) {
        const std::pair<const char*, const ScalarField*> fields[] = {
            {"v1", &s.v.x1}, {"v2", &s.v.x2}, {"xi", &s.xi}, {"zeta", &s.zeta}, {"beta", &s.beta}};
        for (const auto& [name, f] : fields) {
          const auto rel = detail::snapshot_name(i, step, name);
          write_file_atomic(snapshot_dir / rel, detail::snapshot_bytes(*f));
          std::lock_guard lock(files_mutex);
          result.snapshot_files.push_back(rel);
        }
      };
    }
    return run_trajectory(v0, xi0, model, cfg.solver, t).stats;
  });
  std::sort(result.snapshot_files.begin(), result.snapshot_files.end());

  auto& checks = result.checks;
  if (const auto& e = cfg.checks.energy) {
    note("check: energy");
    for (auto& c : energy_report(result.stats, e->ceilings, seed)) checks.push_back(std::move(c));
  }

  McOptions mc{seed, cfg.mc.n_paths, 0, cfg.checks.q, holder};
  std::vector<LevelRun> level_cache;
  const auto runs_for = [&](const std::vector<HyLevel>& levels) {
    std::vector<LevelRun> out;
    for (const auto& level : levels) {
      auto it = std::find_if(level_cache.begin(), level_cache.end(),
                             [&](const LevelRun& r) { return r.level == level; });
      if (it == level_cache.end()) {
        note("hille-yosida level n = " + level.to_string());
        level_cache.push_back({level, monte_carlo(xi0, model.with_level(level), cfg.solver, mc)});
        it = std::prev(level_cache.end());
      }
      out.push_back(*it);
    }
    return out;
  };
  if (const auto& h = cfg.checks.hy_uniformity) {
    note("check: hy_uniformity");
    checks.push_back(hy_uniformity(runs_for(h->levels), h->factor, seed));
  }
  if (const auto& z = cfg.checks.zeta_regularity) {
    note("check: zeta_regularity");
    checks.push_back(zeta_regularity(runs_for(z->levels), z->params(cfg.noise.roughness), seed));
  }
  if (const auto& g = cfg.checks.gronwall) {
    note("check: gronwall");
    const double gn = measure_gagliardo_nirenberg(grid, g->gn_trials, derive_key(seed, 0x67, 0));
    const auto lip = estimate_sigma_lipschitz(model, g->lipschitz_trials, derive_key(seed, 0x4c, 0));
    const auto w = gronwall_weight(gn, lip.l_g);
    GronwallOptions opt{seed, cfg.mc.n_paths, g->perturbation, g->perturbation_seed, g->identical_tolerance, g->slack};
    for (auto& c : gronwall_uniqueness(v0, model, cfg.solver, w, opt)) {
      c.info["gn_constant"] = gn;
      c.info["sigma_slope"] = lip.sigma_slope;
      c.info["sigma_slope_bound"] = lip.sigma_bound;
      checks.push_back(std::move(c));
    }
  }
  if (const auto& b = cfg.checks.bdg) {
    note("check: bdg");
    std::vector<BdgEstimate> est;
    const BdgOptions opt{b->q, b->m_list, b->n_paths, seed, cfg.solver.dt};
    for (int n : b->grids) {
      const SpectralGrid g(n, cfg.grid.domain_length, cfg.grid.dealias_fraction);
      const NoiseModel m(cfg.noise.spec(), g);
      const auto v = biot_savart(initial_vorticity(g, cfg.initial));
      for (double t : b->t_values)
        for (auto& e : bdg_constants(v, m, t, opt)) est.push_back(e);
    }
    for (auto& c : bdg_report(est, b->tolerance, b->n_paths, seed)) checks.push_back(std::move(c));
  }
  if (const auto& id = cfg.checks.identities) {
    note("check: identities");
    for (auto& c : identity_suite(grid, id->trials, seed, id->tolerances())) checks.push_back(std::move(c));
    if (id->refinement)
      for (auto& c : identity_refinement(grid, id->trials, seed)) checks.push_back(std::move(c));
  }
  return result;
}

inline Manifest make_manifest(const ExperimentConfig& cfg, const ExperimentResult& r) {
  return {config_hash(cfg), cfg.mc.base_seed, cfg.initial.seed, cfg.mc.n_paths, r.snapshot_files};
}

}  // namespace vortex

#endif  // VORTEX_EXPERIMENT_HPP
