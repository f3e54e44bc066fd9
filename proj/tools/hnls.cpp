#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "hnls/config.hpp"
#include "hnls/errors.hpp"
#include "hnls/runner.hpp"

namespace fs = std::filesystem;

namespace {

std::optional<fs::path> env_output_dir() {
  if (const char* dir = std::getenv("HNLS_OUTPUT_DIR"); dir && *dir) return fs::path(dir);
  return std::nullopt;
}

int command_run(const std::string& config_path) {
  const auto cfg = hnls::load_run_config(config_path);
  const fs::path out = env_output_dir().value_or(fs::path(cfg.output_dir));
  const auto manifest = hnls::run(cfg, out);
  for (const auto& m : manifest.monitors) {
    std::cout << (m.passed ? "pass " : "FAIL ") << m.name << ": " << m.detail << '\n';
  }
  std::cout << "exit " << static_cast<int>(manifest.exit_code) << " (" << out.string() << ")\n";
  return static_cast<int>(manifest.exit_code);
}

int command_lab(const std::string& config_path) {
  const auto cfg = hnls::load_lab_config(config_path);
  const fs::path out = env_output_dir().value_or(fs::path(cfg.output_dir));
  std::vector<hnls::EstimateReport> reports;
  const auto code = hnls::run_lab(cfg, out, &reports);
  for (const auto& r : reports) {
    std::printf("%-28s max_ratio=%.6g q99=%.6g skipped=%zu%s\n", r.lemma.c_str(), r.max_ratio,
                r.ratio_quantiles[2], r.skipped, r.violated ? " VIOLATED" : "");
  }
  return static_cast<int>(code);
}

int command_compare(const std::string& a, const std::string& b) {
  const auto report = hnls::compare_checkpoints(a, b);
  std::printf("norm,distance\nL2,%.17g\nH1,%.17g\nLinf,%.17g\n", report.l2, report.h1,
              report.linf);
  return 0;
}

int command_sweep(const std::string& pattern, unsigned threads) {
  const auto results = hnls::sweep(pattern, env_output_dir(), threads);
  if (results.empty()) {
    std::cerr << "no configs match " << pattern << '\n';
    return 1;
  }
  int worst = 0;
  for (const auto& r : results) {
    const int code = static_cast<int>(r.exit_code);
    std::cout << code << ' ' << r.config.string();
    if (!r.message.empty()) std::cout << ": " << r.message;
    std::cout << '\n';
    if (code != 0 && (worst == 0 || code < worst)) worst = code;
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid periodic/decaying NLS solver and estimate lab"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "Evolve one scenario config");
  run->add_option("config", config, "Run config file")->required();

  std::string lab_config;
  auto* lab = app.add_subcommand("lab", "Sample the pointwise and Sobolev estimates");
  lab->add_option("config", lab_config, "Lab config file")->required();

  std::string a, b;
  auto* compare = app.add_subcommand("compare", "Distances between two checkpoints");
  compare->add_option("a", a, "First checkpoint")->required();
  compare->add_option("b", b, "Second checkpoint")->required();

  std::string pattern;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Run every config matching a glob");
  sweep->add_option("pattern", pattern, "Config glob, e.g. 'configs/*.ini'")->required();
  sweep->add_option("-j,--threads", threads, "Parallel runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return command_run(config);
    if (*lab) return command_lab(lab_config);
    if (*compare) return command_compare(a, b);
    if (*sweep) return command_sweep(pattern, threads);
  } catch (const hnls::Error& e) {
    std::cerr << "error (" << hnls::to_string(e.kind()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
