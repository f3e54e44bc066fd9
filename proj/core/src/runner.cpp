#include "hnls/runner.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "hnls/checkpoint.hpp"
#include "hnls/errors.hpp"
#include "hnls/functionals.hpp"
#include "hnls/line_solver.hpp"
#include "hnls/scenarios.hpp"
#include "hnls/spectral.hpp"
#include "hnls/torus_solver.hpp"

#ifndef HNLS_VERSION_STRING
#define HNLS_VERSION_STRING "unknown"
#endif

namespace hnls {
namespace fs = std::filesystem;
namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string hex64(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string step_tag(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08zu", step);
  return buf;
}

double relative_drift(const std::vector<double>& series) {
  if (series.empty()) return 0.0;
  const double base = series.front();
  double worst = 0.0;
  for (double x : series) worst = std::max(worst, std::abs(x - base));
  return base != 0.0 ? worst / std::abs(base) : worst;
}

struct MonitorSet {
  std::vector<MonitorOutcome> outcomes;
  void add(std::string name, bool passed, ExitCode code, std::string detail) {
    outcomes.push_back({std::move(name), passed, passed ? ExitCode::Ok : code, std::move(detail)});
  }
  ExitCode worst() const {
    ExitCode code = ExitCode::Ok;
    for (const auto& m : outcomes) {
      if (!m.passed && (code == ExitCode::Ok || m.failure_code < code)) code = m.failure_code;
    }
    return code;
  }
};

double sup_l2_distance(const std::vector<ComplexField>& a, const std::vector<ComplexField>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, sobolev_norm(a[i] - b[i], 0.0));
  return worst;
}

/// Strang steps per Picard node interval so that the step does not exceed dt.
std::size_t substeps(double horizon, int nodes, double dt) {
  const double node_dt = horizon / (nodes - 1);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(node_dt / dt - 1e-12)));
}

void picard_monitors(const RunConfig& cfg, const StepperConfig& stepper, const Power& p,
                     const InitialData& data, MonitorSet& monitors) {
  const int nodes = stepper.picard_quad_nodes;

  // Torus.
  const double t_torus = cfg.picard_fraction * guaranteed_time_torus(data.w0, p, cfg.c_cal);
  if (std::isinf(t_torus)) {
    monitors.add("picard_torus", true, ExitCode::Picard, "zero data; nothing to iterate");
  } else {
    try {
      const auto pic = picard_solve_torus(data.w0, t_torus, stepper, p, cfg.c_cal);
      std::string detail = "T=" + num(t_torus) + " iterations=" +
                           std::to_string(pic.diagnostics.iterations);
      bool ok = true;
      if (cfg.solver_mode == SolverMode::Both) {
        StepperConfig fine = stepper;
        const auto k = substeps(t_torus, nodes, stepper.dt);
        fine.dt = t_torus / static_cast<double>((nodes - 1) * k);
        const auto traj = evolve_torus(data.w0, t_torus, fine, p);
        std::vector<ComplexField> strang;
        for (int j = 0; j < nodes; ++j) strang.push_back(traj.at_step(j * k).w);
        const double dist = sup_l2_distance(pic.fields, strang);
        const double bound = pic.diagnostics.quadrature_error + cfg.tol.picard_strang;
        ok = dist <= bound;
        detail += " strang_distance=" + num(dist) + " bound=" + num(bound);
      }
      monitors.add("picard_torus", ok, ExitCode::Picard, detail);
    } catch (const NonConvergence& e) {
      monitors.add("picard_torus", false, ExitCode::Picard, e.what());
    }
  }

  // Line, with w supplied by a fine torus Strang run.
  const double t_line = cfg.picard_fraction * guaranteed_time_line(data.v0, data.w0, p, cfg.c_cal);
  if (std::isinf(t_line)) {
    monitors.add("picard_line", true, ExitCode::Picard, "zero data; nothing to iterate");
    return;
  }
  try {
    StepperConfig fine = stepper;
    const auto k = substeps(t_line, nodes, stepper.dt);
    fine.dt = t_line / static_cast<double>((nodes - 1) * k);
    const auto traj = evolve_torus(data.w0, t_line, fine, p);
    std::vector<TorusState> w_nodes;
    for (int j = 0; j < nodes; ++j) w_nodes.push_back(traj.at_step(j * k));
    const auto pic = picard_solve_line(data.v0, w_nodes, t_line, stepper, p, cfg.c_cal);
    std::string detail =
        "T=" + num(t_line) + " iterations=" + std::to_string(pic.diagnostics.iterations);
    bool ok = true;
    if (cfg.solver_mode == SolverMode::Both) {
      std::vector<ComplexField> strang;
      evolve_coupled(data.v0, data.w0, t_line, fine, p, [&](const CoupledSample& s) {
        if (s.step % k == 0) strang.push_back(s.state.v.v);
      });
      const double dist = sup_l2_distance(pic.fields, strang);
      const double bound = pic.diagnostics.quadrature_error + cfg.tol.picard_strang;
      ok = dist <= bound;
      detail += " strang_distance=" + num(dist) + " bound=" + num(bound);
    }
    monitors.add("picard_line", ok, ExitCode::Picard, detail);
  } catch (const NonConvergence& e) {
    monitors.add("picard_line", false, ExitCode::Picard, e.what());
  }
}

void save_pair(const fs::path& dir, const std::string& tag, const HybridState& state, double p,
               std::vector<std::string>& files, const fs::path& root) {
  const auto v_path = dir / ("v_" + tag + ".bin");
  const auto w_path = dir / ("w_" + tag + ".bin");
  save_checkpoint(v_path, Checkpoint{state.t, p, state.v.v});
  save_checkpoint(w_path, Checkpoint{state.t, p, state.w.w});
  files.push_back(fs::relative(v_path, root).generic_string());
  files.push_back(fs::relative(w_path, root).generic_string());
}

}  // namespace

std::string code_version() { return HNLS_VERSION_STRING; }

RunManifest run(const RunConfig& cfg, const fs::path& output_dir) {
  const auto wall_start = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.config_hash = hex64(config_hash(cfg));
  manifest.code_version = code_version();
  manifest.start_time = utc_now();
  manifest.regime = global_hypothesis_holds(cfg.p, cfg.s_torus) ? "global" : "local-theory-only";
  if (manifest.regime != "global") {
    std::cerr << "warning: (p, s_torus) = (" << cfg.p << ", " << cfg.s_torus
              << ") is outside the global-bound hypothesis; run is local-theory-only\n";
  }

  fs::create_directories(output_dir);
  MonitorSet monitors;
  const Power p(cfg.p);
  StepperConfig stepper;
  stepper.dt = cfg.dt;
  stepper.dealias = cfg.resolved_dealias();

  auto finish = [&]() -> RunManifest {
    manifest.monitors = monitors.outcomes;
    if (manifest.exit_code == ExitCode::Ok) manifest.exit_code = monitors.worst();
    manifest.end_time = utc_now();
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    manifest.files.push_back("manifest.txt");
    write_manifest(output_dir / "manifest.txt", manifest, cfg);
    return manifest;
  };

  const InitialData data = build_initial_data(cfg);

  const auto ckpt_dir = output_dir / "checkpoints";
  fs::create_directories(ckpt_dir);
  ConservedLedger ledger;
  std::vector<double> boundary;
  double worst_boundary = 0.0;
  std::size_t steps = 0;
  std::optional<HybridState> final_state;

  try {
    steps = step_count(cfg.t_end, cfg.dt);
    auto observer = [&](const CoupledSample& s) {
      const bool last = s.step == steps;
      if (s.step % cfg.ledger_every == 0 || last) {
        ledger.append(measure(s.state, s.w_t_line, p, cfg.s_torus));
        worst_boundary =
            std::max(worst_boundary, boundary_mass_monitor(s.state.v.v, cfg.tol.boundary_fraction));
      }
      if (cfg.checkpoint_every > 0 && s.step % cfg.checkpoint_every == 0 && !last) {
        save_pair(ckpt_dir, step_tag(s.step), s.state, cfg.p, manifest.files, output_dir);
      }
    };
    final_state = evolve_coupled(data.v0, data.w0, cfg.t_end, stepper, p, observer);
    save_pair(ckpt_dir, "final", *final_state, cfg.p, manifest.files, output_dir);
    monitors.add("finite", true, ExitCode::NonFinite, "all fields finite");
  } catch (const StepRejected& e) {
    monitors.add("finite", false, ExitCode::NonFinite, e.what());
  } catch (const InvalidField& e) {
    monitors.add("finite", false, ExitCode::NonFinite, e.what());
  }
  manifest.steps = steps;
  manifest.ledger_rows = ledger.size();

  {
    std::ofstream os(output_dir / "ledger.csv", std::ios::binary | std::ios::trunc);
    ledger.write_csv(os);
    manifest.files.push_back("ledger.csv");
  }

  if (!ledger.empty()) {
    for (std::size_t i = 0; i < ledger.size(); ++i) {
      manifest.sup_mass_energy =
          std::max(manifest.sup_mass_energy, ledger.mass_v[i] + ledger.energy_v[i]);
    }

    BlowUpConfig blow;
    blow.ceiling = cfg.tol.blowup_ceiling;
    blow.growth_factor = cfg.tol.blowup_growth;
    const double unit = guaranteed_time_line(data.v0, data.w0, p, cfg.c_cal);
    if (std::isfinite(unit)) blow.time_unit = unit;
    const auto blow_up = blow_up_monitor(ledger.times, ledger.h1_v, blow);
    monitors.add("blow_up", !blow_up.flagged, ExitCode::NonFinite,
                 blow_up.flagged ? blow_up.reason + " at t=" + num(blow_up.flag_time) + "; " + blow_up.note
                                 : "silent");

    monitors.add("boundary", worst_boundary <= cfg.tol.boundary_mass, ExitCode::Boundary,
                 "max outer mass fraction " + num(worst_boundary));

    const double mass_drift = relative_drift(ledger.mass_w);
    const double energy_drift = relative_drift(ledger.energy_w);
    monitors.add("torus_mass", mass_drift <= cfg.tol.torus_mass_drift, ExitCode::Envelope,
                 "relative drift " + num(mass_drift));
    monitors.add("torus_energy", energy_drift <= cfg.tol.torus_energy_drift, ExitCode::Envelope,
                 "relative drift " + num(energy_drift));

    const double w0_h1 = sobolev_norm(data.w0, 1.0);
    EnvelopeParams env;
    env.p = cfg.p;
    env.w0_h1 = w0_h1;
    env.tolerance = cfg.tol.envelope;
    const auto energy_env = envelope_check(ledger, EnvelopeKind::EnergyBound, env);
    monitors.add("envelope_energy_bound", energy_env.fitted <= 1.0 && energy_env.no_crossing,
                 ExitCode::Envelope, "fitted constant " + num(energy_env.fitted) + " (bound 1)");

    env.fit_fraction = 0.5;
    const auto hs_env = envelope_check(ledger, EnvelopeKind::HsExponential, env);
    monitors.add("envelope_hs_exponential", hs_env.no_crossing, ExitCode::Envelope,
                 "fitted rate " + num(hs_env.fitted) + " crossings " +
                     std::to_string(hs_env.crossings));

    const auto eq_env = envelope_check(ledger, EnvelopeKind::Equivalence, env);
    monitors.add("envelope_equivalence", eq_env.no_crossing, ExitCode::Envelope,
                 "fitted constant " + num(eq_env.fitted) + " crossings " +
                     std::to_string(eq_env.crossings));

    const bool pure_plane_wave = cfg.scenario == Scenario::PlaneWave &&
                                 cfg.params.amplitude2 == 0.0 && cfg.params.carrier_noise == 0.0;
    if (pure_plane_wave && final_state) {
      const auto exact = plane_wave_exact(TorusGrid(cfg.torus_n), cfg.params.amplitude,
                                          cfg.params.wavenumber, cfg.p, final_state->t);
      const double err = sobolev_norm(final_state->w.w - exact, 0.0);
      manifest.plane_wave_error = err;
      monitors.add("plane_wave_exact", err <= cfg.tol.plane_wave_error, ExitCode::Envelope,
                   "final L2 error " + num(err));
    }
  }

  if (cfg.solver_mode != SolverMode::Strang) picard_monitors(cfg, stepper, p, data, monitors);
  return finish();
}

void write_manifest(const fs::path& path, const RunManifest& m, const RunConfig& cfg) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot write " + path.string());
  os << "[run]\n";
  os << "config_hash = " << m.config_hash << '\n';
  os << "code_version = " << m.code_version << '\n';
  os << "start_time = " << m.start_time << '\n';
  os << "end_time = " << m.end_time << '\n';
  os << "wall_seconds = " << num(m.wall_seconds) << '\n';
  os << "torus_n = " << cfg.torus_n << '\n';
  os << "line_n = " << cfg.line_n << '\n';
  os << "steps = " << m.steps << '\n';
  os << "ledger_rows = " << m.ledger_rows << '\n';
  os << "regime = " << m.regime << '\n';
  os << "dealias_applied = " << (cfg.resolved_dealias() ? "true" : "false") << '\n';
  os << "sup_mass_energy = " << num(m.sup_mass_energy) << '\n';
  if (m.plane_wave_error) os << "plane_wave_error = " << num(*m.plane_wave_error) << '\n';
  os << "exit_code = " << static_cast<int>(m.exit_code) << '\n';
  if (!m.message.empty()) os << "message = " << m.message << '\n';
  os << "\n[monitors]\n";
  for (const auto& mon : m.monitors) {
    os << mon.name << " = " << (mon.passed ? "pass" : "fail") << "; " << mon.detail << '\n';
  }
  os << "\n[files]\n";
  for (std::size_t i = 0; i < m.files.size(); ++i) os << "file." << i << " = " << m.files[i] << '\n';
  os << "\n[config]\n" << canonical_text(cfg);
}

ExitCode run_lab(const LabConfig& cfg, const fs::path& output_dir,
                 std::vector<EstimateReport>* reports_out) {
  fs::create_directories(output_dir);
  const Power p(cfg.p);
  const FieldSampler sampler(cfg.seed, TorusGrid(cfg.grid_n), cfg.gamma, cfg.amplitude);
  LabOptions opts;
  opts.samples = cfg.samples;
  opts.threads = cfg.threads;
  opts.exploratory = cfg.exploratory;
  const bool all = cfg.lemma == LabLemma::All;

  ExitCode code = ExitCode::Ok;
  auto emit = [&](const std::string& name, std::span<const EstimateReport> reports) {
    std::ofstream os(output_dir / ("lab_" + name + ".csv"), std::ios::binary | std::ios::trunc);
    write_reports_csv(os, reports);
    if (reports_out) reports_out->insert(reports_out->end(), reports.begin(), reports.end());
  };

  if (all || cfg.lemma == LabLemma::FractionalChain) {
    const bool in_range = cfg.s >= 0.0 && (p.is_odd_integer() || cfg.s <= p.floor_p());
    if (!all || in_range || cfg.exploratory) {
      const auto r = verify_fractional_chain(sampler, p, cfg.s, opts);
      emit("fractional_chain", std::span(&r, 1));
    }
  }
  if (all || cfg.lemma == LabLemma::Difference) {
    const auto r = verify_difference_lemma(sampler, p, opts);
    emit("difference", r);
  }
  if (all || cfg.lemma == LabLemma::Taylor) {
    if (!all || p.value() >= 3.0) {
      const auto r = verify_taylor_lemma(sampler, p, opts);
      emit("taylor", r);
    }
  }
  if (all || cfg.lemma == LabLemma::Interpolation) {
    const double q = cfg.q.value_or(0.5 * (p.value() + 3.0));
    const auto r = verify_interpolation(sampler, p, q, opts);
    emit("interpolation", std::span(&r, 1));
    if (r.violated) code = ExitCode::Envelope;
  }
  return code;
}

CompareReport compare_checkpoints(const fs::path& a, const fs::path& b) {
  const auto ca = load_checkpoint(a);
  const auto cb = load_checkpoint(b);
  require_same_grid(ca.field, cb.field);
  const auto diff = ca.field - cb.field;
  return CompareReport{sobolev_norm(diff, 0.0), sobolev_norm(diff, 1.0), lp_norm(diff, kInfinity)};
}

std::vector<fs::path> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<fs::path> out;
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SweepResult> sweep(const std::string& pattern,
                               const std::optional<fs::path>& output_root, unsigned threads) {
  const auto configs = expand_glob(pattern);
  std::vector<SweepResult> results(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      auto& r = results[i];
      r.config = configs[i];
      try {
        const auto cfg = load_run_config(configs[i]);
        const fs::path root = output_root ? *output_root : fs::path(cfg.output_dir);
        const auto m = run(cfg, root / configs[i].stem());
        r.exit_code = m.exit_code;
      } catch (const Error& e) {
        r.exit_code = ExitCode::InvalidConfig;
        r.message = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return results;
}

}  // namespace hnls
