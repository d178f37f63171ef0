#ifndef VORTEX_OUTPUTS_HPP
#define VORTEX_OUTPUTS_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortex/estimates.hpp"
#include "vortex/integrator.hpp"

#ifndef VORTEX_VERSION
#define VORTEX_VERSION "0.0.0"
#endif

namespace vortex {

namespace fs = std::filesystem;

/// Failure to read or write an output file; the message names the path.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* tool_version = VORTEX_VERSION;

inline constexpr const char* stats_header =
    "path_index,sup_v_l2sq,int_grad_v,sup_xi_lq,sup_beta_l2,int_grad_beta,sup_beta_lq,status";

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string stats_csv(const std::vector<TrajectoryStats>& paths) {
  std::string out = std::string(stats_header) + "\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& s = paths[i];
    out += std::to_string(i);
    for (std::size_t f = 0; f < functional_names.size(); ++f) out += "," + format_double(functional(s, f));
    out += "," + to_string(s.status) + "\n";
  }
  return out;
}

/// Numbers stay JSON numbers; non-finite values become the strings "inf", "-inf", "nan".
inline nlohmann::json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

inline double json_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return infinity;
    if (s == "-inf") return -infinity;
    if (s == "nan") return std::nan("");
  }
  throw std::invalid_argument("expected a number");
}

inline nlohmann::json check_json(const CheckResult& c) {
  nlohmann::json j = {{"name", c.name},         {"observed", number_json(c.observed)},
                      {"bound", number_json(c.bound)}, {"passed", c.passed},
                      {"n_samples", c.n_samples}, {"seed", c.seed}};
  if (c.skipped) j["skipped"] = true;
  if (!c.info.empty()) {
    nlohmann::json info = nlohmann::json::object();
    for (const auto& [k, v] : c.info) info[k] = number_json(v);
    j["info"] = info;
  }
  return j;
}

inline CheckResult check_from_json(const nlohmann::json& j) {
  CheckResult c;
  c.name = j.at("name").get<std::string>();
  c.observed = json_number(j.at("observed"));
  c.bound = json_number(j.at("bound"));
  c.passed = j.at("passed").get<bool>();
  c.n_samples = j.at("n_samples").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.skipped = j.value("skipped", false);
  if (j.contains("info"))
    for (auto it = j["info"].begin(); it != j["info"].end(); ++it) c.info[it.key()] = json_number(it.value());
  return c;
}

inline std::string checks_json(const std::vector<CheckResult>& checks) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : checks) a.push_back(check_json(c));
  return a.dump(2) + "\n";
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw OutputError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to a sibling temporary file, then renames over the target.
inline void write_file_atomic(const fs::path& target, const std::string& content) {
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot create " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw OutputError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw OutputError("cannot rename " + tmp.string() + " to " + target.string());
  }
}

/// Creates `dir`; an existing non-empty directory is refused unless `force`.
inline void prepare_output_dir(const fs::path& dir, bool force) {
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec)) throw OutputError(dir.string() + " exists and is not a directory");
    if (!fs::is_empty(dir, ec) && !force)
      throw OutputError(dir.string() + " is not empty (use --force to overwrite)");
    return;
  }
  fs::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create " + dir.string() + ": " + ec.message());
}

struct Manifest {
  std::string config_hash;
  std::uint64_t base_seed = 0;
  std::uint64_t initial_seed = 0;
  std::size_t n_paths = 0;
  std::vector<std::string> files;
};

inline std::string manifest_json(const Manifest& m) {
  nlohmann::json j = {{"tool", "vortex"},
                      {"tool_version", tool_version},
                      {"config_hash", m.config_hash},
                      {"seeds",
                       {{"base_seed", m.base_seed},
                        {"initial_seed", m.initial_seed},
                        {"path_streams", "increment (base_seed, path_index, step)"},
                        {"n_paths", m.n_paths}}},
                      {"files", m.files}};
  return j.dump(2) + "\n";
}

/// Writes stats.csv, checks.json, the resolved config when given, and
/// manifest.json (last) into an existing directory.
inline void write_outputs(const fs::path& dir, const std::vector<TrajectoryStats>& stats,
                          const std::vector<CheckResult>& checks, Manifest manifest,
                          const std::string& resolved_config = {}) {
  std::vector<std::string> files{"stats.csv", "checks.json"};
  write_file_atomic(dir / "stats.csv", stats_csv(stats));
  write_file_atomic(dir / "checks.json", checks_json(checks));
  if (!resolved_config.empty()) {
    write_file_atomic(dir / "config.resolved.json", resolved_config);
    files.push_back("config.resolved.json");
  }
  files.insert(files.end(), manifest.files.begin(), manifest.files.end());
  manifest.files = std::move(files);
  write_file_atomic(dir / "manifest.json", manifest_json(manifest));
}

/// Parses stats.csv back into per-path functionals.
inline std::vector<TrajectoryStats> parse_stats_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != stats_header) throw OutputError("stats.csv: unexpected header");
  std::vector<TrajectoryStats> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) throw OutputError("stats.csv: malformed row " + std::to_string(out.size()));
    TrajectoryStats s;
    double* fields[] = {&s.sup_v_l2sq, &s.int_grad_v, &s.sup_xi_lq, &s.sup_beta_l2, &s.int_grad_beta, &s.sup_beta_lq};
    for (std::size_t f = 0; f < 6; ++f) *fields[f] = std::strtod(cells[f + 1].c_str(), nullptr);
    if (cells[7] == "completed") s.status = PathStatus::completed;
    else if (cells[7] == "blowup") s.status = PathStatus::blowup;
    else throw OutputError("stats.csv: unknown status " + cells[7]);
    out.push_back(s);
  }
  return out;
}

}  // namespace vortex

#endif  // VORTEX_OUTPUTS_HPP
