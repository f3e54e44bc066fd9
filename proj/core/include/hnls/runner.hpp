#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hnls/config.hpp"
#include "hnls/estimates.hpp"

namespace hnls {

enum class ExitCode : int {
  Ok = 0,
  InvalidConfig = 1,
  NonFinite = 2,
  Boundary = 3,
  Envelope = 4,
  Picard = 5,
};

struct MonitorOutcome {
  std::string name;
  bool passed = true;
  ExitCode failure_code = ExitCode::Ok;
  std::string detail;
};

struct RunManifest {
  std::string config_hash;
  std::string code_version;
  std::string start_time;
  std::string end_time;
  double wall_seconds = 0.0;
  std::size_t steps = 0;
  std::size_t ledger_rows = 0;
  std::string regime;
  double sup_mass_energy = 0.0;
  std::optional<double> plane_wave_error;
  std::vector<MonitorOutcome> monitors;
  std::vector<std::string> files;
  ExitCode exit_code = ExitCode::Ok;
  std::string message;
};

/// Evolves the configured scenario, writes ledger.csv, checkpoints and
/// manifest.txt into output_dir, and evaluates every monitor. The exit code is
/// the smallest failing monitor class, or Ok.
RunManifest run(const RunConfig& cfg, const std::filesystem::path& output_dir);

/// Writes lab_<lemma>.csv files into output_dir. Returns Envelope if the
/// interpolation oracle reports a violation.
ExitCode run_lab(const LabConfig& cfg, const std::filesystem::path& output_dir,
                 std::vector<EstimateReport>* reports = nullptr);

struct CompareReport {
  double l2 = 0.0;
  double h1 = 0.0;
  double linf = 0.0;
};

/// Distances between two checkpoints on the same grid; GridMismatch otherwise.
CompareReport compare_checkpoints(const std::filesystem::path& a, const std::filesystem::path& b);

/// Expands a glob pattern into a sorted list of paths.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

struct SweepResult {
  std::filesystem::path config;
  ExitCode exit_code = ExitCode::Ok;
  std::string message;
};

/// Runs every config matching the pattern, each into output_root/<stem> (or
/// its own output_dir/<stem> without a root), on up to `threads` workers.
std::vector<SweepResult> sweep(const std::string& pattern,
                               const std::optional<std::filesystem::path>& output_root,
                               unsigned threads);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest,
                    const RunConfig& cfg);

std::string code_version();

}  // namespace hnls
