#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "vortex/cli.hpp"

using namespace vortex;

namespace {

const fs::path config_dir = VORTEX_CONFIG_DIR;

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = fs::temp_directory_path() / ("vortex_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::vector<std::string> owned{"vortex"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : owned) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string write_config(const fs::path& dir, const json& j) {
  fs::create_directories(dir);
  const auto p = dir / "config.json";
  std::ofstream(p) << j.dump();
  return p.string();
}

json small_config(const fs::path& out) {
  return {{"grid", {{"modes_per_dim", 16}}},
          {"solver", {{"dt", 1e-3}, {"t_end", 0.01}}},
          {"noise", {{"modes", {{"shell", {1, 4}}}}}},
          {"initial", {{"max_index", 4}}},
          {"mc", {{"n_paths", 3}, {"base_seed", 5}}},
          {"output", {{"directory", out.string()}}}};
}

ScalarField load_field(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return to_spectral(read_snapshot(in));
}

}  // namespace

TEST(Config, MinimalGetsDefaults) {
  const auto c = load_config((config_dir / "minimal.json").string());
  EXPECT_EQ(c.grid.modes_per_dim, 32);
  EXPECT_DOUBLE_EQ(c.noise.roughness, 0.5);
  EXPECT_DOUBLE_EQ(c.checks.q, 4.0);
  EXPECT_DOUBLE_EQ(c.grid.dealias_fraction, 2.0 / 3.0);
  EXPECT_TRUE(c.noise.hy_level.is_infinite());
  EXPECT_TRUE(c.checks.energy.has_value());
}

TEST(Config, ShippedConfigsLoad) {
  for (const char* name : {"minimal.json", "default.json", "full.json"})
    EXPECT_NO_THROW(load_config((config_dir / name).string())) << name;
}

TEST(Config, ErrorsNameTheField) {
  const auto message = [](const json& j) {
    try {
      parse_config(j);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message({{"grid", {{"modes_per_dim", 16}}}, {"solver", {{"dt", 0.5}, {"t_end", 0.1}}}}).find("solver.dt"),
            std::string::npos);
  EXPECT_NE(message({{"grid", {{"modes_per_dim", 16}, {"colour", 1}}}, {"solver", {{"dt", 1e-3}, {"t_end", 0.1}}}})
                .find("grid.colour"),
            std::string::npos);
  EXPECT_NE(message({{"grid", {{"modes_per_dim", "big"}}}, {"solver", {{"dt", 1e-3}, {"t_end", 0.1}}}})
                .find("grid.modes_per_dim"),
            std::string::npos);
  EXPECT_FALSE(message({{"solver", {{"dt", 1e-3}, {"t_end", 0.1}}}}).empty());
  EXPECT_THROW(parse_config_text("{"), ConfigError);
}

TEST(Config, ResolvedDumpRoundTrips) {
  for (const char* name : {"minimal.json", "default.json", "full.json"}) {
    const auto c = load_config((config_dir / name).string());
    const auto again = parse_config_text(resolved_dump(c));
    EXPECT_TRUE(again == c) << name;
    EXPECT_EQ(resolved_dump(again), resolved_dump(c));
  }
}

TEST(Config, HashTracksResolvedConfig) {
  const auto a = parse_config_text(R"({"grid": {"modes_per_dim": 32}, "solver": {"dt": 0.001, "t_end": 0.1}})");
  const auto b = parse_config_text(R"({"solver": {"t_end": 0.1, "dt": 1e-3},
                                       "grid": {"modes_per_dim": 32, "dealias_fraction": 0.6666666666666666}})");
  EXPECT_EQ(config_hash(a), config_hash(b));
  auto c = a;
  c.noise.c0 = 0.5;
  EXPECT_NE(config_hash(a), config_hash(c));
  c = a;
  c.mc.base_seed = 2;
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
}

TEST(Outputs, EmptyStatsIsHeaderOnly) {
  EXPECT_EQ(stats_csv({}), std::string(stats_header) + "\n");
  EXPECT_TRUE(parse_stats_csv(stats_csv({})).empty());
}

TEST(Outputs, StatsAndChecksRoundTrip) {
  TrajectoryStats s;
  s.sup_v_l2sq = 1.0 / 3.0;
  s.int_grad_beta = 2e-300;
  s.status = PathStatus::blowup;
  const auto back = parse_stats_csv(stats_csv({s, TrajectoryStats{}}));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].sup_v_l2sq, s.sup_v_l2sq);
  EXPECT_EQ(back[0].int_grad_beta, s.int_grad_beta);
  EXPECT_EQ(back[0].status, PathStatus::blowup);

  auto c = make_check("x", std::numeric_limits<double>::infinity(), 1.0, 4, 9);
  c.info["nan"] = std::nan("");
  const auto j = json::parse(checks_json({c}));
  const auto r = check_from_json(j[0]);
  EXPECT_EQ(r.name, "x");
  EXPECT_TRUE(std::isinf(r.observed));
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(std::isnan(r.info.at("nan")));
}

TEST(Outputs, DirectoryPolicyAndAtomicWrites) {
  TempDir t("dirs");
  prepare_output_dir(t.path(), false);
  write_file_atomic(t.path() / "a.txt", "hello");
  EXPECT_EQ(read_file(t.path() / "a.txt"), "hello");
  EXPECT_FALSE(fs::exists(t.path() / "a.txt.tmp"));
  EXPECT_THROW(prepare_output_dir(t.path(), false), OutputError);
  EXPECT_NO_THROW(prepare_output_dir(t.path(), true));
  EXPECT_THROW(prepare_output_dir(t.path() / "a.txt", true), OutputError);
}

TEST(Experiment, SnapshotsReproduceFunctionals) {
  TempDir t("snap");
  auto c = parse_config(small_config(t.path()));
  c.output.snapshot_stride = 1;
  c.checks.q = 3.0;
  const auto r = run_experiment(c, t.path());
  const std::size_t steps = c.solver.steps();
  ASSERT_EQ(r.snapshot_files.size(), c.mc.n_paths * (steps + 1) * 5);
  for (std::size_t p = 0; p < c.mc.n_paths; ++p) {
    TrajectoryStats s;
    for (std::size_t k = 0; k <= steps; ++k) {
      const auto at = [&](const char* f) { return load_field(t.path() / detail::snapshot_name(p, k, f)); };
      const VectorField v(at("v1"), at("v2"));
      const auto xi = at("xi"), beta = at("beta");
      s.sup_v_l2sq = std::max(s.sup_v_l2sq, l2_norm_sq(v));
      s.sup_xi_lq = std::max(s.sup_xi_lq, lq_norm(xi, 3.0));
      s.sup_beta_l2 = std::max(s.sup_beta_l2, std::sqrt(l2_norm_sq(beta)));
      s.sup_beta_lq = std::max(s.sup_beta_lq, lq_norm(beta, 3.0));
      if (k < steps) {
        s.int_grad_v += c.solver.dt * gradient_norm_sq(v);
        s.int_grad_beta += c.solver.dt * gradient_norm_sq(beta);
      }
    }
    for (std::size_t f = 0; f < functional_names.size(); ++f) {
      const double want = functional(r.stats[p], f), got = functional(s, f);
      EXPECT_NEAR(got, want, 1e-12 * std::max(std::abs(want), 1.0)) << functional_names[f] << " path " << p;
    }
  }
}

TEST(Cli, RunIsReproducible) {
  TempDir t("cli_run");
  const auto cfg = write_config(t.path(), small_config(t.path() / "unused"));
  const auto a = t.path() / "a", b = t.path() / "b";
  EXPECT_EQ(run_cli({"run", "--config", cfg, "--seed", "7", "--out", a.string(), "--quiet"}), 0);
  EXPECT_EQ(run_cli({"run", "--config", cfg, "--seed", "7", "--out", b.string(), "--quiet"}), 0);
  for (const char* f : {"stats.csv", "checks.json"}) EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
  const char* all[] = {"stats.csv", "checks.json", "config.resolved.json", "manifest.json"};
  std::vector<std::string> first;
  for (const char* f : all) first.push_back(read_file(a / f));
  EXPECT_EQ(run_cli({"run", "--config", cfg, "--seed", "7", "--out", a.string(), "--quiet", "--force"}), 0);
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(read_file(a / all[i]), first[i]) << all[i];
  EXPECT_EQ(parse_stats_csv(read_file(a / "stats.csv")).size(), 3u);
  EXPECT_NE(read_file(a / "config.resolved.json").find("\"base_seed\": 7"), std::string::npos);

  EXPECT_EQ(run_cli({"run", "--config", cfg, "--out", a.string(), "--quiet"}), 2);
  EXPECT_EQ(run_cli({"run", "--config", cfg, "--out", a.string(), "--quiet", "--force"}), 0);

  std::string text;
  EXPECT_EQ(run_cli({"report", "--dir", a.string()}, &text), 0);
  EXPECT_NE(text.find("PASS"), std::string::npos);
  EXPECT_EQ(run_cli({"report", "--dir", (t.path() / "nowhere").string()}), 2);
}

TEST(Cli, FailuresExitWithCodes) {
  TempDir t("cli_fail");
  const auto out = t.path() / "out";
  EXPECT_EQ(run_cli({"run", "--config", (t.path() / "missing.json").string(), "--out", out.string()}), 2);
  EXPECT_FALSE(fs::exists(out));

  auto j = small_config(out);
  j["solver"]["dt"] = 1.0;
  EXPECT_EQ(run_cli({"run", "--config", write_config(t.path(), j)}), 2);
  EXPECT_FALSE(fs::exists(out));

  j = small_config(out);
  j["checks"] = {{"energy", {{"ceilings", {{"sup_v_l2sq", 1e-9}}}}}};
  EXPECT_EQ(run_cli({"run", "--config", write_config(t.path(), j), "--quiet"}), 1);
  EXPECT_TRUE(fs::exists(out / "checks.json"));

  EXPECT_EQ(run_cli({"frobnicate"}), 2);
}

TEST(Cli, CheckIdentitiesPrintsJson) {
  std::string text;
  EXPECT_EQ(run_cli({"check", "identities", "--grid", "64", "--trials", "4"}, &text), 0);
  const auto j = json::parse(text);
  ASSERT_TRUE(j.is_array());
  EXPECT_GE(j.size(), 10u);
  for (const auto& c : j) EXPECT_TRUE(c.at("passed").get<bool>()) << c.at("name");
}
