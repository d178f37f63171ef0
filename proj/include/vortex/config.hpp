#ifndef VORTEX_CONFIG_HPP
#define VORTEX_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortex/estimates.hpp"
#include "vortex/identities.hpp"
#include "vortex/initial.hpp"
#include "vortex/integrator.hpp"
#include "vortex/noise.hpp"

namespace vortex {

using json = nlohmann::json;

/// Invalid configuration; the message starts with the offending field path.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GridConfig {
  int modes_per_dim = 64;
  double domain_length = 2.0 * std::numbers::pi;
  double dealias_fraction = 2.0 / 3.0;

  SpectralGrid grid() const { return SpectralGrid(modes_per_dim, domain_length, dealias_fraction); }
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct NoiseConfig {
  double shell_min = 1.0;
  double shell_max = 8.0;
  std::optional<std::vector<NoiseMode>> modes;  ///< explicit list; replaces the shell when set
  double c0 = 1.0;
  double decay_exponent = 1.1;
  SigmaKind sigma_kind = SigmaKind::rational_square;
  PivotSpec pivot{};
  double roughness = 0.5;
  HyLevel hy_level = HyLevel::infinite();

  /// c_k = c0 |j|^{-decay_exponent}, with |j| = 0 mapped to c0.
  double coefficient(const NoiseMode& m) const {
    const double mag = m.index_magnitude();
    return mag == 0.0 ? c0 : c0 * std::pow(mag, -decay_exponent);
  }

  CovarianceSpec spec() const {
    CovarianceSpec s;
    if (modes) {
      s.modes = *modes;
      for (const auto& m : s.modes) s.coefficients.push_back(coefficient(m));
    } else {
      s = CovarianceSpec::power_law(shell_min, shell_max, c0, decay_exponent);
    }
    s.roughness = roughness;
    s.sigma_kind = sigma_kind;
    s.pivot = pivot;
    s.level = hy_level;
    return s;
  }

  friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

struct McConfig {
  std::size_t n_paths = 32;
  std::uint64_t base_seed = 1;
  friend bool operator==(const McConfig&, const McConfig&) = default;
};

struct EnergyCheckConfig {
  Ceilings ceilings = default_ceilings;
  friend bool operator==(const EnergyCheckConfig&, const EnergyCheckConfig&) = default;
};

inline std::vector<HyLevel> levels_of(std::initializer_list<long> finite, bool with_infinity = true) {
  std::vector<HyLevel> out;
  for (long n : finite) out.push_back(HyLevel::finite(n));
  if (with_infinity) out.push_back(HyLevel::infinite());
  return out;
}

struct HyCheckConfig {
  std::vector<HyLevel> levels = levels_of({1, 10, 100});
  double factor = 1.5;
  friend bool operator==(const HyCheckConfig&, const HyCheckConfig&) = default;
};

struct ZetaCheckConfig {
  std::vector<HyLevel> levels = levels_of({1, 10, 100});
  double beta = 0.2;
  double delta = 0.0;
  double p = 25.0;
  double q = 2.0;
  double max_variation = 2.0;
  std::size_t stride = 10;

  ZetaParams params(double roughness) const { return {beta, delta, p, q, roughness, max_variation}; }
  friend bool operator==(const ZetaCheckConfig&, const ZetaCheckConfig&) = default;
};

struct GronwallCheckConfig {
  double perturbation = 1e-3;
  std::uint64_t perturbation_seed = 99;
  std::size_t gn_trials = 10000;
  std::size_t lipschitz_trials = 2000;
  double slack = 0.05;
  double identical_tolerance = 1e-12;
  friend bool operator==(const GronwallCheckConfig&, const GronwallCheckConfig&) = default;
};

struct BdgCheckConfig {
  double q = 4.0;
  std::vector<int> m_list{2, 4};
  std::size_t n_paths = 500;
  std::vector<int> grids{64, 128};
  std::vector<double> t_values{0.25, 0.5};
  double tolerance = 0.5;
  friend bool operator==(const BdgCheckConfig&, const BdgCheckConfig&) = default;
};

struct IdentityCheckConfig {
  std::size_t trials = 100;
  bool refinement = true;
  double exact_tolerance = 1e-10;
  double weighted_tolerance = 1e-6;
  double dual_bound_factor = 1.01;
  double biot_savart_tolerance = 1e-12;

  IdentityTolerances tolerances() const {
    return {exact_tolerance, weighted_tolerance, dual_bound_factor, biot_savart_tolerance};
  }
  friend bool operator==(const IdentityCheckConfig&, const IdentityCheckConfig&) = default;
};

/// Named checks; a check runs iff its entry is present.
struct ChecksConfig {
  double q = 4.0;
  std::optional<EnergyCheckConfig> energy = EnergyCheckConfig{};
  std::optional<HyCheckConfig> hy_uniformity;
  std::optional<ZetaCheckConfig> zeta_regularity;
  std::optional<GronwallCheckConfig> gronwall;
  std::optional<BdgCheckConfig> bdg;
  std::optional<IdentityCheckConfig> identities;
  friend bool operator==(const ChecksConfig&, const ChecksConfig&) = default;
};

struct OutputConfig {
  std::string directory = "vortex_out";
  std::size_t snapshot_stride = 0;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ExperimentConfig {
  GridConfig grid;
  SolverConfig solver;
  NoiseConfig noise;
  InitialSpec initial;
  McConfig mc;
  ChecksConfig checks;
  OutputConfig output;

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.grid == b.grid && a.solver.dt == b.solver.dt && a.solver.t_end == b.solver.t_end &&
           a.solver.blowup_threshold == b.solver.blowup_threshold && a.noise == b.noise &&
           a.initial == b.initial && a.mc == b.mc && a.checks == b.checks && a.output == b.output;
  }
};

// ---------------------------------------------------------------------------
// JSON reading

namespace detail {

/// Reads one JSON object, tracking consumed keys so leftovers can be rejected.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be a JSON object");
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  template <class T>
  void read(const std::string& key, T& out) {
    if (!has(key)) return;
    const auto& v = raw(key);
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw ConfigError("");
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer()) throw ConfigError("");
        if constexpr (std::is_unsigned_v<T>)
          if (v.is_number_integer() && !v.is_number_unsigned() && v.template get<long long>() < 0)
            throw ConfigError("");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError("");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError("");
      }
      out = v.template get<T>();
    } catch (const std::exception&) {
      throw ConfigError(child(key) + " has the wrong type (" + std::string(v.type_name()) + ")");
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(child(it.key()) + " is not a recognized key");
  }

  std::string where() const { return path_.empty() ? "config" : path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline HyLevel parse_level(const json& v, const std::string& path) {
  if (v.is_string() && (v == "inf" || v == "infinity")) return HyLevel::infinite();
  if (v.is_number_integer()) {
    const long n = v.get<long>();
    if (n <= 0) throw ConfigError(path + " must be a positive integer or \"inf\"");
    return HyLevel::finite(n);
  }
  throw ConfigError(path + " must be a positive integer or \"inf\"");
}

inline json level_json(const HyLevel& l) { return l.is_infinite() ? json("inf") : json(l.value()); }

inline std::vector<HyLevel> parse_levels(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path + " must be a non-empty array");
  std::vector<HyLevel> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_level(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline Parity parse_parity(const json& v, const std::string& path) {
  if (v == "cos") return Parity::cos;
  if (v == "sin") return Parity::sin;
  throw ConfigError(path + " must be \"cos\" or \"sin\"");
}

inline SigmaKind parse_sigma(const json& v, const std::string& path) {
  if (v == "constant_one") return SigmaKind::constant_one;
  if (v == "rational_square") return SigmaKind::rational_square;
  if (v == "zero") return SigmaKind::zero;
  throw ConfigError(path + " must be one of constant_one, rational_square, zero");
}

inline NoiseMode parse_mode(const json& v, const std::string& path) {
  ObjectReader r(v, path);
  NoiseMode m{0, 0, Parity::cos};
  if (!r.has("j")) throw ConfigError(r.child("j") + " is required");
  const auto& j = r.raw("j");
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ConfigError(r.child("j") + " must be a pair of integers");
  m.j1 = j[0].get<int>();
  m.j2 = j[1].get<int>();
  if (r.has("parity")) m.parity = parse_parity(r.raw("parity"), r.child("parity"));
  r.finish();
  return m;
}

inline json mode_json(const NoiseMode& m) {
  return {{"j", {m.j1, m.j2}}, {"parity", to_string(m.parity)}};
}

template <class T>
std::vector<T> parse_array(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path + " must be a non-empty array");
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool ok = std::is_integral_v<T> ? v[i].is_number_integer() : v[i].is_number();
    if (!ok) throw ConfigError(path + "[" + std::to_string(i) + "] has the wrong type");
    out.push_back(v[i].get<T>());
  }
  return out;
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace detail

inline GridConfig parse_grid(const json& j) {
  detail::ObjectReader r(j, "grid");
  GridConfig g;
  r.read("modes_per_dim", g.modes_per_dim);
  r.read("domain_length", g.domain_length);
  r.read("dealias_fraction", g.dealias_fraction);
  r.finish();
  return g;
}

inline SolverConfig parse_solver(const json& j) {
  detail::ObjectReader r(j, "solver");
  SolverConfig s;
  r.read("dt", s.dt);
  r.read("t_end", s.t_end);
  r.read("blowup_threshold", s.blowup_threshold);
  if (r.has("scheme")) {
    std::string scheme;
    r.read("scheme", scheme);
    detail::require(scheme == "exp_euler", "solver.scheme must be \"exp_euler\"");
  }
  r.finish();
  return s;
}

inline NoiseConfig parse_noise(const json& j) {
  detail::ObjectReader r(j, "noise");
  NoiseConfig n;
  if (r.has("modes")) {
    const auto& m = r.raw("modes");
    if (m.is_array()) {
      std::vector<NoiseMode> list;
      for (std::size_t i = 0; i < m.size(); ++i) list.push_back(detail::parse_mode(m[i], "noise.modes[" + std::to_string(i) + "]"));
      n.modes = std::move(list);
    } else {
      detail::ObjectReader s(m, "noise.modes");
      if (!s.has("shell")) throw ConfigError("noise.modes.shell is required when noise.modes is an object");
      const auto shell = detail::parse_array<double>(s.raw("shell"), "noise.modes.shell");
      detail::require(shell.size() == 2, "noise.modes.shell must be [min, max]");
      n.shell_min = shell[0];
      n.shell_max = shell[1];
      s.finish();
    }
  }
  r.read("c0", n.c0);
  r.read("decay_exponent", n.decay_exponent);
  if (r.has("sigma_kind")) n.sigma_kind = detail::parse_sigma(r.raw("sigma_kind"), "noise.sigma_kind");
  if (r.has("pivot")) {
    detail::ObjectReader p(r.raw("pivot"), "noise.pivot");
    if (p.has("mode")) n.pivot.mode = detail::parse_mode(p.raw("mode"), "noise.pivot.mode");
    p.read("amplitude", n.pivot.amplitude);
    p.finish();
  }
  r.read("roughness", n.roughness);
  if (r.has("hy_level")) n.hy_level = detail::parse_level(r.raw("hy_level"), "noise.hy_level");
  r.finish();
  return n;
}

inline InitialSpec parse_initial(const json& j) {
  detail::ObjectReader r(j, "initial");
  InitialSpec s;
  r.read("seed", s.seed);
  r.read("max_index", s.max_index);
  r.read("decay", s.decay);
  r.read("l2_norm", s.l2_norm);
  r.finish();
  return s;
}

inline McConfig parse_mc(const json& j) {
  detail::ObjectReader r(j, "mc");
  McConfig m;
  r.read("n_paths", m.n_paths);
  r.read("base_seed", m.base_seed);
  r.finish();
  return m;
}

inline ChecksConfig parse_checks(const json& j) {
  detail::ObjectReader r(j, "checks");
  ChecksConfig c;
  c.energy.reset();
  r.read("q", c.q);
  if (r.has("energy")) {
    detail::ObjectReader e(r.raw("energy"), "checks.energy");
    EnergyCheckConfig ec;
    if (e.has("ceilings")) {
      detail::ObjectReader cl(e.raw("ceilings"), "checks.energy.ceilings");
      for (std::size_t f = 0; f < functional_names.size(); ++f) cl.read(functional_names[f], ec.ceilings[f]);
      cl.finish();
    }
    e.finish();
    c.energy = ec;
  }
  if (r.has("hy_uniformity")) {
    detail::ObjectReader e(r.raw("hy_uniformity"), "checks.hy_uniformity");
    HyCheckConfig h;
    if (e.has("levels")) h.levels = detail::parse_levels(e.raw("levels"), "checks.hy_uniformity.levels");
    e.read("factor", h.factor);
    e.finish();
    c.hy_uniformity = h;
  }
  if (r.has("zeta_regularity")) {
    detail::ObjectReader e(r.raw("zeta_regularity"), "checks.zeta_regularity");
    ZetaCheckConfig z;
    if (e.has("levels")) z.levels = detail::parse_levels(e.raw("levels"), "checks.zeta_regularity.levels");
    e.read("beta", z.beta);
    e.read("delta", z.delta);
    e.read("p", z.p);
    e.read("q", z.q);
    e.read("max_variation", z.max_variation);
    e.read("stride", z.stride);
    e.finish();
    c.zeta_regularity = z;
  }
  if (r.has("gronwall")) {
    detail::ObjectReader e(r.raw("gronwall"), "checks.gronwall");
    GronwallCheckConfig g;
    e.read("perturbation", g.perturbation);
    e.read("perturbation_seed", g.perturbation_seed);
    e.read("gn_trials", g.gn_trials);
    e.read("lipschitz_trials", g.lipschitz_trials);
    e.read("slack", g.slack);
    e.read("identical_tolerance", g.identical_tolerance);
    e.finish();
    c.gronwall = g;
  }
  if (r.has("bdg")) {
    detail::ObjectReader e(r.raw("bdg"), "checks.bdg");
    BdgCheckConfig b;
    e.read("q", b.q);
    if (e.has("m_list")) b.m_list = detail::parse_array<int>(e.raw("m_list"), "checks.bdg.m_list");
    e.read("n_paths", b.n_paths);
    if (e.has("grids")) b.grids = detail::parse_array<int>(e.raw("grids"), "checks.bdg.grids");
    if (e.has("t_values")) b.t_values = detail::parse_array<double>(e.raw("t_values"), "checks.bdg.t_values");
    e.read("tolerance", b.tolerance);
    e.finish();
    c.bdg = b;
  }
  if (r.has("identities")) {
    detail::ObjectReader e(r.raw("identities"), "checks.identities");
    IdentityCheckConfig i;
    e.read("trials", i.trials);
    e.read("refinement", i.refinement);
    e.read("exact_tolerance", i.exact_tolerance);
    e.read("weighted_tolerance", i.weighted_tolerance);
    e.read("dual_bound_factor", i.dual_bound_factor);
    e.read("biot_savart_tolerance", i.biot_savart_tolerance);
    e.finish();
    c.identities = i;
  }
  r.finish();
  return c;
}

inline OutputConfig parse_output(const json& j) {
  detail::ObjectReader r(j, "output");
  OutputConfig o;
  r.read("directory", o.directory);
  r.read("snapshot_stride", o.snapshot_stride);
  r.finish();
  return o;
}

/// Re-validates every component invariant; throws ConfigError naming the field.
inline void validate(const ExperimentConfig& c) {
  using detail::require;
  try {
    const auto grid = c.grid.grid();
    c.solver.validate();
    require(c.noise.shell_min >= 0.0 && c.noise.shell_max >= c.noise.shell_min,
            "noise.modes.shell must satisfy 0 <= min <= max");
    require(std::isfinite(c.noise.c0), "noise.c0 must be finite");
    require(std::isfinite(c.noise.decay_exponent), "noise.decay_exponent must be finite");
    const NoiseModel model(c.noise.spec(), grid);
    c.initial.validate();
    initial_vorticity(grid, c.initial);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  require(c.mc.n_paths >= 1, "mc.n_paths must be >= 1");
  require(c.checks.q >= 1.0, "checks.q must be >= 1");
  if (c.checks.energy) require(c.mc.n_paths >= 2, "mc.n_paths must be >= 2 when checks.energy is enabled");
  if (const auto& h = c.checks.hy_uniformity) {
    require(h->levels.size() >= 2, "checks.hy_uniformity.levels needs at least 2 levels");
    require(h->factor >= 1.0, "checks.hy_uniformity.factor must be >= 1");
  }
  if (const auto& z = c.checks.zeta_regularity) {
    require(z->stride >= 1, "checks.zeta_regularity.stride must be >= 1");
    require(z->max_variation >= 1.0, "checks.zeta_regularity.max_variation must be >= 1");
    try {
      z->params(c.noise.roughness).validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("checks.zeta_regularity: ") + e.what());
    }
  }
  if (const auto& g = c.checks.gronwall) {
    require(g->perturbation > 0.0, "checks.gronwall.perturbation must be positive");
    require(g->gn_trials >= 1 && g->lipschitz_trials >= 1, "checks.gronwall trial counts must be >= 1");
    require(g->slack >= 0.0, "checks.gronwall.slack must be nonnegative");
  }
  if (const auto& b = c.checks.bdg) {
    require(b->q >= 1.0 && std::isfinite(b->q), "checks.bdg.q must be finite and >= 1");
    for (int m : b->m_list) require(m >= 2 && m % 2 == 0, "checks.bdg.m_list entries must be even and >= 2");
    require(b->n_paths >= 2, "checks.bdg.n_paths must be >= 2");
    for (int n : b->grids) {
      try {
        const SpectralGrid g(n, c.grid.domain_length, c.grid.dealias_fraction);
        const NoiseModel model(c.noise.spec(), g);
        initial_vorticity(g, c.initial);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("checks.bdg.grids: ") + e.what());
      }
    }
    for (double t : b->t_values) {
      try {
        SolverConfig{c.solver.dt, t, c.solver.blowup_threshold}.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("checks.bdg.t_values: ") + e.what());
      }
    }
  }
  if (const auto& i = c.checks.identities) require(i->trials >= 1, "checks.identities.trials must be >= 1");
  require(!c.output.directory.empty(), "output.directory must not be empty");
}

inline ExperimentConfig parse_config(const json& j) {
  detail::ObjectReader r(j, "");
  ExperimentConfig c;
  if (!r.has("grid")) throw ConfigError("grid is required");
  if (!r.has("solver")) throw ConfigError("solver is required");
  c.grid = parse_grid(r.raw("grid"));
  c.solver = parse_solver(r.raw("solver"));
  if (r.has("noise")) c.noise = parse_noise(r.raw("noise"));
  if (r.has("initial")) c.initial = parse_initial(r.raw("initial"));
  if (r.has("mc")) c.mc = parse_mc(r.raw("mc"));
  if (r.has("checks")) c.checks = parse_checks(r.raw("checks"));
  if (r.has("output")) c.output = parse_output(r.raw("output"));
  r.finish();
  validate(c);
  return c;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  return parse_config(j);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// ---------------------------------------------------------------------------
// Resolved dump

inline json to_json(const ExperimentConfig& c) {
  using detail::level_json;
  json noise = {{"c0", c.noise.c0},
                {"decay_exponent", c.noise.decay_exponent},
                {"sigma_kind", to_string(c.noise.sigma_kind)},
                {"pivot", {{"mode", detail::mode_json(c.noise.pivot.mode)}, {"amplitude", c.noise.pivot.amplitude}}},
                {"roughness", c.noise.roughness},
                {"hy_level", level_json(c.noise.hy_level)}};
  if (c.noise.modes) {
    json list = json::array();
    for (const auto& m : *c.noise.modes) list.push_back(detail::mode_json(m));
    noise["modes"] = list;
  } else {
    noise["modes"] = {{"shell", {c.noise.shell_min, c.noise.shell_max}}};
  }

  const auto levels = [&](const std::vector<HyLevel>& ls) {
    json a = json::array();
    for (const auto& l : ls) a.push_back(level_json(l));
    return a;
  };
  json checks = {{"q", c.checks.q}};
  if (const auto& e = c.checks.energy) {
    json ceil;
    for (std::size_t f = 0; f < functional_names.size(); ++f) ceil[functional_names[f]] = e->ceilings[f];
    checks["energy"] = {{"ceilings", ceil}};
  }
  if (const auto& h = c.checks.hy_uniformity)
    checks["hy_uniformity"] = {{"levels", levels(h->levels)}, {"factor", h->factor}};
  if (const auto& z = c.checks.zeta_regularity)
    checks["zeta_regularity"] = {{"levels", levels(z->levels)}, {"beta", z->beta}, {"delta", z->delta},
                                 {"p", z->p}, {"q", z->q}, {"max_variation", z->max_variation},
                                 {"stride", z->stride}};
  if (const auto& g = c.checks.gronwall)
    checks["gronwall"] = {{"perturbation", g->perturbation}, {"perturbation_seed", g->perturbation_seed},
                          {"gn_trials", g->gn_trials}, {"lipschitz_trials", g->lipschitz_trials},
                          {"slack", g->slack}, {"identical_tolerance", g->identical_tolerance}};
  if (const auto& b = c.checks.bdg)
    checks["bdg"] = {{"q", b->q}, {"m_list", b->m_list}, {"n_paths", b->n_paths},
                     {"grids", b->grids}, {"t_values", b->t_values}, {"tolerance", b->tolerance}};
  if (const auto& i = c.checks.identities)
    checks["identities"] = {{"trials", i->trials},
                            {"refinement", i->refinement},
                            {"exact_tolerance", i->exact_tolerance},
                            {"weighted_tolerance", i->weighted_tolerance},
                            {"dual_bound_factor", i->dual_bound_factor},
                            {"biot_savart_tolerance", i->biot_savart_tolerance}};

  return {{"grid",
           {{"modes_per_dim", c.grid.modes_per_dim},
            {"domain_length", c.grid.domain_length},
            {"dealias_fraction", c.grid.dealias_fraction}}},
          {"solver",
           {{"dt", c.solver.dt},
            {"t_end", c.solver.t_end},
            {"blowup_threshold", c.solver.blowup_threshold},
            {"scheme", "exp_euler"}}},
          {"noise", noise},
          {"initial",
           {{"seed", c.initial.seed},
            {"max_index", c.initial.max_index},
            {"decay", c.initial.decay},
            {"l2_norm", c.initial.l2_norm}}},
          {"mc", {{"n_paths", c.mc.n_paths}, {"base_seed", c.mc.base_seed}}},
          {"checks", checks},
          {"output", {{"directory", c.output.directory}, {"snapshot_stride", c.output.snapshot_stride}}}};
}

inline std::string resolved_dump(const ExperimentConfig& c) { return to_json(c).dump(2) + "\n"; }

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string config_hash(const ExperimentConfig& c) { return fnv1a_hex(to_json(c).dump()); }

}  // namespace vortex

#endif  // VORTEX_CONFIG_HPP
