#include "hnls/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>
#include <vector>

#include "hnls/errors.hpp"
#include "hnls/grid.hpp"

namespace hnls {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double to_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw InvalidConfig("key '" + key + "': expected a finite number, got '" + text + "'");
  }
  return value;
}

template <typename Int>
Int to_integer(const std::string& key, const std::string& text) {
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidConfig("key '" + key + "': expected an integer, got '" + text + "'");
  }
  return value;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw InvalidConfig("key '" + key + "': expected a boolean, got '" + text + "'");
}

template <typename Config>
struct Key {
  std::string name;
  std::function<void(Config&, const std::string&)> set;
  std::function<std::string(const Config&)> get;
};

template <typename Config, typename Access>
Key<Config> real_key(std::string name, Access access) {
  return {name,
          [name, access](Config& c, const std::string& v) { access(c) = to_double(name, v); },
          [access](const Config& c) { return format_double(access(c)); }};
}

template <typename Int, typename Config, typename Access>
Key<Config> integer_key(std::string name, Access access) {
  return {name,
          [name, access](Config& c, const std::string& v) { access(c) = to_integer<Int>(name, v); },
          [access](const Config& c) { return std::to_string(access(c)); }};
}

template <typename Config, typename Access>
Key<Config> string_key(std::string name, Access access) {
  return {name, [access](Config& c, const std::string& v) { access(c) = v; },
          [access](const Config& c) { return access(c); }};
}

template <typename Config, typename Access>
Key<Config> bool_key(std::string name, Access access) {
  return {name, [name, access](Config& c, const std::string& v) { access(c) = to_bool(name, v); },
          [access](const Config& c) -> std::string {
            return access(c) ? "true" : "false";
          }};
}

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& key, const std::string& text,
                const std::array<Enum, N>& values) {
  for (Enum e : values) {
    if (text == to_string(e)) return e;
  }
  throw InvalidConfig("key '" + key + "': unknown value '" + text + "'");
}

constexpr std::array kScenarios{Scenario::PlaneWave, Scenario::Constant, Scenario::DroppedBit,
                                Scenario::GaussianOnCarrier, Scenario::CustomCheckpoint};
constexpr std::array kModes{SolverMode::Strang, SolverMode::Picard, SolverMode::Both};
constexpr std::array kLemmas{LabLemma::FractionalChain, LabLemma::Difference, LabLemma::Taylor,
                             LabLemma::Interpolation, LabLemma::All};

#define HNLS_FIELD(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<Key<RunConfig>>& run_keys() {
  using C = RunConfig;
  static const std::vector<Key<C>> keys = [] {
    std::vector<Key<C>> k;
    k.push_back(real_key<C>("p", HNLS_FIELD(p)));
    k.push_back(real_key<C>("s_torus", HNLS_FIELD(s_torus)));
    k.push_back(integer_key<std::size_t, C>("torus_n", HNLS_FIELD(torus_n)));
    k.push_back(integer_key<std::size_t, C>("line_n", HNLS_FIELD(line_n)));
    k.push_back(integer_key<int, C>("line_K", HNLS_FIELD(line_k)));
    k.push_back(real_key<C>("dt", HNLS_FIELD(dt)));
    k.push_back(real_key<C>("t_end", HNLS_FIELD(t_end)));
    k.push_back({"scenario",
                 [](C& c, const std::string& v) { c.scenario = parse_enum("scenario", v, kScenarios); },
                 [](const C& c) { return std::string(to_string(c.scenario)); }});
    k.push_back(integer_key<std::uint64_t, C>("seed", HNLS_FIELD(seed)));
    k.push_back(string_key<C>("output_dir", HNLS_FIELD(output_dir)));
    k.push_back({"solver_mode",
                 [](C& c, const std::string& v) { c.solver_mode = parse_enum("solver_mode", v, kModes); },
                 [](const C& c) { return std::string(to_string(c.solver_mode)); }});
    k.push_back({"dealias",
                 [](C& c, const std::string& v) {
                   if (v == "auto") {
                     c.dealias.reset();
                   } else {
                     c.dealias = to_bool("dealias", v);
                   }
                 },
                 [](const C& c) -> std::string {
                   if (!c.dealias) return "auto";
                   return *c.dealias ? "true" : "false";
                 }});
    k.push_back(integer_key<std::size_t, C>("checkpoint_every", HNLS_FIELD(checkpoint_every)));
    k.push_back(integer_key<std::size_t, C>("ledger_every", HNLS_FIELD(ledger_every)));
    k.push_back(real_key<C>("picard_fraction", HNLS_FIELD(picard_fraction)));
    k.push_back(real_key<C>("c_cal", HNLS_FIELD(c_cal)));
    k.push_back(real_key<C>("amplitude", HNLS_FIELD(params.amplitude)));
    k.push_back(integer_key<int, C>("wavenumber", HNLS_FIELD(params.wavenumber)));
    k.push_back(real_key<C>("amplitude2", HNLS_FIELD(params.amplitude2)));
    k.push_back(integer_key<int, C>("wavenumber2", HNLS_FIELD(params.wavenumber2)));
    k.push_back(real_key<C>("bump_amplitude", HNLS_FIELD(params.bump_amplitude)));
    k.push_back(real_key<C>("sigma", HNLS_FIELD(params.sigma)));
    k.push_back(real_key<C>("plateau_width", HNLS_FIELD(params.plateau_width)));
    k.push_back(real_key<C>("ramp", HNLS_FIELD(params.ramp)));
    k.push_back(real_key<C>("center", HNLS_FIELD(params.center)));
    k.push_back(real_key<C>("carrier_noise", HNLS_FIELD(params.carrier_noise)));
    k.push_back(real_key<C>("noise_decay", HNLS_FIELD(params.noise_decay)));
    k.push_back(string_key<C>("checkpoint_v", HNLS_FIELD(params.checkpoint_v)));
    k.push_back(string_key<C>("checkpoint_w", HNLS_FIELD(params.checkpoint_w)));
    k.push_back(real_key<C>("tolerance.boundary_fraction", HNLS_FIELD(tol.boundary_fraction)));
    k.push_back(real_key<C>("tolerance.boundary_mass", HNLS_FIELD(tol.boundary_mass)));
    k.push_back(real_key<C>("tolerance.torus_mass_drift", HNLS_FIELD(tol.torus_mass_drift)));
    k.push_back(real_key<C>("tolerance.torus_energy_drift", HNLS_FIELD(tol.torus_energy_drift)));
    k.push_back(real_key<C>("tolerance.envelope", HNLS_FIELD(tol.envelope)));
    k.push_back(real_key<C>("tolerance.blowup_ceiling", HNLS_FIELD(tol.blowup_ceiling)));
    k.push_back(real_key<C>("tolerance.blowup_growth", HNLS_FIELD(tol.blowup_growth)));
    k.push_back(real_key<C>("tolerance.picard_strang", HNLS_FIELD(tol.picard_strang)));
    k.push_back(real_key<C>("tolerance.plane_wave_error", HNLS_FIELD(tol.plane_wave_error)));
    return k;
  }();
  return keys;
}

const std::vector<Key<LabConfig>>& lab_keys() {
  using C = LabConfig;
  static const std::vector<Key<C>> keys = [] {
    std::vector<Key<C>> k;
    k.push_back(integer_key<std::uint64_t, C>("seed", HNLS_FIELD(seed)));
    k.push_back(real_key<C>("p", HNLS_FIELD(p)));
    k.push_back({"lemma",
                 [](C& c, const std::string& v) { c.lemma = parse_enum("lemma", v, kLemmas); },
                 [](const C& c) { return std::string(to_string(c.lemma)); }});
    k.push_back(integer_key<std::size_t, C>("samples", HNLS_FIELD(samples)));
    k.push_back(real_key<C>("gamma", HNLS_FIELD(gamma)));
    k.push_back(real_key<C>("s", HNLS_FIELD(s)));
    k.push_back({"q",
                 [](C& c, const std::string& v) {
                   if (v == "auto") {
                     c.q.reset();
                   } else {
                     c.q = to_double("q", v);
                   }
                 },
                 [](const C& c) { return c.q ? format_double(*c.q) : std::string("auto"); }});
    k.push_back(integer_key<std::size_t, C>("grid_n", HNLS_FIELD(grid_n)));
    k.push_back(real_key<C>("amplitude", HNLS_FIELD(amplitude)));
    k.push_back(integer_key<unsigned, C>("threads", HNLS_FIELD(threads)));
    k.push_back(bool_key<C>("exploratory", HNLS_FIELD(exploratory)));
    k.push_back(string_key<C>("output_dir", HNLS_FIELD(output_dir)));
    return k;
  }();
  return keys;
}

#undef HNLS_FIELD

template <typename Config>
Config apply_keys(const KeyValues& kv, const std::vector<Key<Config>>& keys,
                  std::initializer_list<const char*> required) {
  for (const char* name : required) {
    if (!kv.contains(name)) throw InvalidConfig(std::string("missing required key '") + name + "'");
  }
  Config cfg;
  for (const auto& [name, value] : kv) {
    const auto it = std::find_if(keys.begin(), keys.end(),
                                 [&](const Key<Config>& k) { return k.name == name; });
    if (it == keys.end()) throw InvalidConfig("unknown key '" + name + "'");
    it->set(cfg, value);
  }
  return cfg;
}

template <typename Config>
std::string render(const Config& cfg, const std::vector<Key<Config>>& keys) {
  std::vector<std::pair<std::string, std::string>> lines;
  lines.reserve(keys.size());
  for (const auto& k : keys) lines.emplace_back(k.name, k.get(cfg));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& [name, value] : lines) out += name + " = " + value + "\n";
  return out;
}

void check(bool ok, const std::string& message) {
  if (!ok) throw InvalidConfig(message);
}

KeyValues read_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InvalidConfig("cannot open config " + path.string());
  return parse_key_values(is);
}

}  // namespace

const char* to_string(Scenario scenario) noexcept {
  switch (scenario) {
    case Scenario::PlaneWave: return "plane_wave";
    case Scenario::Constant: return "constant";
    case Scenario::DroppedBit: return "dropped_bit";
    case Scenario::GaussianOnCarrier: return "gaussian_on_carrier";
    case Scenario::CustomCheckpoint: return "custom_checkpoint";
  }
  return "?";
}

const char* to_string(SolverMode mode) noexcept {
  switch (mode) {
    case SolverMode::Strang: return "strang";
    case SolverMode::Picard: return "picard";
    case SolverMode::Both: return "both";
  }
  return "?";
}

const char* to_string(LabLemma lemma) noexcept {
  switch (lemma) {
    case LabLemma::FractionalChain: return "fractional_chain";
    case LabLemma::Difference: return "difference";
    case LabLemma::Taylor: return "taylor";
    case LabLemma::Interpolation: return "interpolation";
    case LabLemma::All: return "all";
  }
  return "?";
}

KeyValues parse_key_values(std::istream& is) {
  KeyValues kv;
  std::string line;
  std::size_t number = 0;
  while (std::getline(is, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    if (text.front() == '[' && text.back() == ']') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw InvalidConfig("line " + std::to_string(number) + ": expected key = value");
    }
    std::string key = trim(std::string_view(text).substr(0, eq));
    std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw InvalidConfig("line " + std::to_string(number) + ": empty key");
    if (!kv.emplace(key, value).second) throw InvalidConfig("duplicate key '" + key + "'");
  }
  return kv;
}

bool RunConfig::resolved_dealias() const noexcept {
  if (dealias) return *dealias;
  const double r = std::round(p);
  const bool odd_integer = r == p && static_cast<long long>(r) % 2 == 1;
  return !odd_integer;
}

RunConfig parse_run_config(const KeyValues& kv) {
  RunConfig cfg = apply_keys(kv, run_keys(), {"p", "scenario", "dt", "t_end"});
  check(cfg.p >= 2.0, "p must be >= 2");
  check(cfg.s_torus >= 1.0, "s_torus must be >= 1");
  check(is_power_of_two(cfg.torus_n) && cfg.torus_n >= 16, "torus_n must be a power of two >= 16");
  check(is_power_of_two(cfg.line_n) && cfg.line_n >= 16, "line_n must be a power of two >= 16");
  check(cfg.line_k >= 2, "line_K must be >= 2");
  check(cfg.line_n >= 2 * static_cast<std::size_t>(cfg.line_k) * cfg.torus_n,
        "line_n must be at least 2 * line_K * torus_n");
  check(cfg.dt > 0.0 && cfg.t_end > 0.0, "dt and t_end must be positive");
  const double steps = cfg.t_end / cfg.dt;
  check(std::abs(steps - std::round(steps)) <= 1e-9 * std::max(1.0, steps) && std::round(steps) >= 1,
        "t_end must be a whole number of steps dt");
  check(cfg.ledger_every >= 1, "ledger_every must be >= 1");
  check(cfg.picard_fraction > 0.0 && cfg.picard_fraction <= 1.0, "picard_fraction must be in (0, 1]");
  check(cfg.c_cal > 0.0, "c_cal must be positive");
  const auto& sp = cfg.params;
  check(sp.sigma > 0.0, "sigma must be positive");
  check(sp.ramp > 0.0 && sp.plateau_width >= 0.0, "ramp must be positive and plateau_width >= 0");
  check(sp.carrier_noise >= 0.0 && sp.noise_decay >= 0.0, "carrier noise parameters must be >= 0");
  check(std::abs(sp.wavenumber) < static_cast<int>(cfg.torus_n / 2) &&
            std::abs(sp.wavenumber2) < static_cast<int>(cfg.torus_n / 2),
        "carrier wavenumbers must be resolved by torus_n");
  if (cfg.scenario == Scenario::CustomCheckpoint) {
    check(!sp.checkpoint_v.empty() && !sp.checkpoint_w.empty(),
          "custom_checkpoint needs checkpoint_v and checkpoint_w");
  }
  const auto& t = cfg.tol;
  check(t.boundary_fraction > 0.0 && t.boundary_fraction < 0.5,
        "tolerance.boundary_fraction must be in (0, 0.5)");
  for (double x : {t.boundary_mass, t.torus_mass_drift, t.torus_energy_drift, t.envelope,
                   t.blowup_ceiling, t.picard_strang, t.plane_wave_error}) {
    check(x > 0.0, "tolerances must be positive");
  }
  check(t.blowup_growth > 1.0, "tolerance.blowup_growth must exceed 1");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_file(path));
}

std::string canonical_text(const RunConfig& cfg) { return render(cfg, run_keys()); }

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t config_hash(const RunConfig& cfg) { return fnv1a64(canonical_text(cfg)); }

bool global_hypothesis_holds(double p, double s) noexcept {
  if (p < 3.0) return false;
  if (p == 3.0) return s > 1.5;
  const double r = std::round(p);
  const bool odd_integer = r == p && static_cast<long long>(r) % 2 == 1;
  if (odd_integer) return s > 2.5;
  return s > 2.5 && s <= std::floor(p);
}

LabConfig parse_lab_config(const KeyValues& kv) {
  LabConfig cfg = apply_keys(kv, lab_keys(), {"seed", "p", "lemma"});
  check(cfg.p >= 2.0, "p must be >= 2");
  check(cfg.samples >= 1, "samples must be >= 1");
  check(cfg.gamma >= 0.0, "gamma must be >= 0");
  check(is_power_of_two(cfg.grid_n) && cfg.grid_n >= 16, "grid_n must be a power of two >= 16");
  check(cfg.amplitude > 0.0, "amplitude must be positive");
  check(cfg.threads >= 1, "threads must be >= 1");
  return cfg;
}

LabConfig load_lab_config(const std::filesystem::path& path) {
  return parse_lab_config(read_file(path));
}

std::string canonical_text(const LabConfig& cfg) { return render(cfg, lab_keys()); }

}  // namespace hnls
