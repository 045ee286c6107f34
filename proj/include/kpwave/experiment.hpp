#pragma once

#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kpwave/diagnostics.hpp"
#include "kpwave/kp.hpp"
#include "kpwave/waves.hpp"

namespace kpwave {

/// Critical kappa for transverse stability of the KdV soliton under KP-I.
inline const double kKappaCritical = std::pow(3.0, -0.25);

enum class PerturbationKind { none, gaussian, deformation };

std::string to_string(PerturbationKind kind);

/// Everything needed to reproduce one run. Keys accepted by apply_setting()
/// mirror the CLI long flags.
struct ExperimentConfig {
  std::string preset;  // informational
  Equation equation = Equation::kp1;
  double kappa = 2;
  double k = 0.5;
  double u0 = 0;
  double x0 = 0;
  PerturbationKind perturbation = PerturbationKind::none;
  double gauss_scale = 1;
  double delta = 0.4;
  int nx = 1024;
  int ny = 256;
  int periods = 8;
  double ly = 2;
  double t_end = 2;
  long nt = 10000;
  std::optional<std::vector<double>> snapshot_times;  // default: quarters of t_end
  long sample_every = 0;                              // 0: nt / 200
  std::filesystem::path output_dir;                   // empty: no files
  bool dealias = false;
  int threads = 0;  // 0: all cores

  void validate() const;
  Perturbation perturbation_params() const;
  CnoidalParams<double> cnoidal() const { return {kappa, k, u0, x0}; }
  Grid grid() const { return make_grid(nx, ny, kappa, k, periods, ly); }
  std::vector<double> resolved_snapshot_times() const;
  long resolved_sample_every() const;
  nlohmann::json to_json() const;
};

/// Apply one `key = value` setting. Throws std::invalid_argument for unknown
/// keys or malformed values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Parse the flat `key = value` config format ('#' starts a comment).
void apply_config_text(ExperimentConfig& cfg, std::string_view text);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// Keys understood by apply_setting, in documentation order.
const std::vector<std::string>& config_keys();

struct Preset {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

const std::vector<Preset>& presets();
/// Throws std::invalid_argument for unknown names.
ExperimentConfig preset_config(std::string_view name);

struct RunResult {
  Grid grid;
  std::vector<DiagnosticsRecord> records;
  RealField final_field;
  double max_constraint_defect = 0;  // over all observed steps
  std::optional<double> failure_time;
  std::vector<std::filesystem::path> snapshot_files;
};

/// Build the initial data, evolve and record diagnostics (and files when
/// cfg.output_dir is set). Throws ConstraintViolation before any evolution;
/// NonFiniteError after writing a manifest recording the failure time.
RunResult run_experiment(const ExperimentConfig& cfg);

struct ValidationThresholds {
  double dev_linf = 0;
  double delta = 0;
};

/// 1e-11 / 1e-10 below the critical kappa, 1e-6 / 1e-8 above.
ValidationThresholds validation_thresholds(double kappa);

struct ValidationReport {
  Equation equation = Equation::kp1;
  double kappa = 0;
  long nt = 0;
  double t_end = 0;
  double dev_linf = 0;
  double delta = 0;
  double energy_drift = 0;
  ValidationThresholds thresholds;
  bool passed() const {
    return dev_linf <= thresholds.dev_linf && std::abs(delta) <= thresholds.delta;
  }
};

/// Propagate the bare cnoidal wave and compare with its exact translation.
ValidationReport validate(ExperimentConfig cfg);

}  // namespace kpwave
