// kpwave: run cnoidal-wave transverse stability experiments for KP-I/KP-II.
//
//   kpwave presets [--json]
//   kpwave run --preset kp1-gauss-k2 --out runs/kp1-gauss-k2
//   kpwave validate --equation kp1 --kappa 2 --nt 10000

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpwave/etd.hpp"
#include "kpwave/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConstraint = 3;
constexpr int kExitNonFinite = 4;
constexpr int kExitValidation = 5;

// Flags that map one-to-one onto config keys.
const std::vector<std::string>& flag_keys() {
  static const std::vector<std::string> keys = {
      "equation", "kappa", "k",       "u0", "x0",   "perturbation", "gauss-scale",
      "delta",    "t-end", "nt",      "nx", "ny",   "periods",      "ly",
      "out",      "snapshots", "sample-every", "threads"};
  return keys;
}

struct CommonOptions {
  std::string config_path;
  std::string preset;
  std::map<std::string, std::string> values;
  bool dealias = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "key = value config file");
  cmd->add_option("--preset", opts.preset, "named experiment (see `presets`)");
  for (const auto& key : flag_keys()) {
    cmd->add_option("--" + key, opts.values[key], "override config key '" + key + "'");
  }
  cmd->add_flag("--dealias", opts.dealias, "apply the 2/3 rule to the quadratic term");
}

// Preset, then config file, then individual flags.
kpwave::ExperimentConfig resolve(const CLI::App* cmd, const CommonOptions& opts) {
  kpwave::ExperimentConfig cfg;
  if (!opts.preset.empty()) {
    cfg = kpwave::preset_config(opts.preset);
  }
  if (!opts.config_path.empty()) {
    kpwave::apply_config_file(cfg, opts.config_path);
  }
  if (cmd->count("--gauss-scale") > 0 && cmd->count("--delta") > 0) {
    throw std::invalid_argument("--gauss-scale and --delta select different perturbations");
  }
  for (const auto& key : flag_keys()) {
    if (cmd->count("--" + key) > 0) {
      kpwave::apply_setting(cfg, key, opts.values.at(key));
    }
  }
  if (opts.dealias) {
    cfg.dealias = true;
  }
  cfg.validate();
  return cfg;
}

void print_presets(bool json) {
  const auto& list = kpwave::presets();
  if (json) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& p : list) {
      table.push_back({{"name", p.name},
                       {"description", p.description},
                       {"config", p.config.to_json()}});
    }
    table.push_back({{"name", "validate"},
                     {"description", "bare cnoidal propagation checked against the exact "
                                     "traveling wave"}});
    std::cout << table.dump(2) << '\n';
    return;
  }
  std::printf("%-14s %-5s %-6s %-12s %-7s %s\n", "name", "eq", "kappa", "perturbation", "t_end",
              "description");
  for (const auto& p : list) {
    const auto& c = p.config;
    std::printf("%-14s %-5s %-6g %-12s %-7g %s\n", p.name.c_str(),
                kpwave::to_string(c.equation).c_str(), c.kappa,
                kpwave::to_string(c.perturbation).c_str(), c.t_end, p.description.c_str());
  }
  std::printf("%-14s %-5s %-6s %-12s %-7s %s\n", "validate", "any", "2", "none", "2",
              "bare cnoidal propagation checked against the exact traveling wave");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KP-I/KP-II Fourier spectral solver for perturbed cnoidal waves"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "run one experiment and write snapshots/diagnostics");
  add_common_options(run, run_opts);

  CommonOptions val_opts;
  auto* val = app.add_subcommand("validate", "propagate the bare cnoidal wave and check accuracy");
  add_common_options(val, val_opts);

  bool presets_json = false;
  auto* list = app.add_subcommand("presets", "list named experiments");
  list->add_flag("--json", presets_json, "emit the table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (list->parsed()) {
      print_presets(presets_json);
      return kExitOk;
    }
    if (run->parsed()) {
      const auto cfg = resolve(run, run_opts);
      const auto result = kpwave::run_experiment(cfg);
      const auto& last = result.records.back();
      std::printf("t=%.6g  delta=%.3e  linf=%.6g  dev_l2=%.6e  constraint=%.3e\n", last.t,
                  last.delta, last.linf, last.dev_l2, result.max_constraint_defect);
      return kExitOk;
    }
    if (val->parsed()) {
      const auto cfg = resolve(val, val_opts);
      const auto report = kpwave::validate(cfg);
      std::printf("equation=%s kappa=%g nt=%ld t_end=%g\n",
                  kpwave::to_string(report.equation).c_str(), report.kappa, report.nt,
                  report.t_end);
      std::printf("dev_linf=%.3e (threshold %.1e)\n", report.dev_linf,
                  report.thresholds.dev_linf);
      std::printf("delta=%.3e (threshold %.1e)\n", report.delta, report.thresholds.delta);
      std::printf("energy_drift=%.3e\n", report.energy_drift);
      std::printf("%s\n", report.passed() ? "PASS" : "FAIL");
      return report.passed() ? kExitOk : kExitValidation;
    }
  } catch (const kpwave::ConstraintViolation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConstraint;
  } catch (const kpwave::NonFiniteError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNonFinite;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitUsage;
}
