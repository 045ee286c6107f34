#include "kpwave/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kpwave/etd.hpp"
#include "kpwave/io.hpp"

namespace kpwave {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("'" + std::string(key) + "' expects a finite number, got '" + s +
                                "'");
  }
  return v;
}

long parse_integer(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    // Accept integral values written as floats, e.g. "1e4".
    const double d = parse_double(key, s);
    if (d != std::floor(d) || std::abs(d) > 1e15) {
      throw std::invalid_argument("'" + std::string(key) + "' expects an integer, got '" + s +
                                  "'");
    }
    return static_cast<long>(d);
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s.empty() || s == "1" || s == "true" || s == "yes" || s == "on") {
    return true;
  }
  if (s == "0" || s == "false" || s == "no" || s == "off") {
    return false;
  }
  throw std::invalid_argument("'" + std::string(key) + "' expects a boolean, got '" + s + "'");
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> values;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (!trim(item).empty()) {
      values.push_back(parse_double(key, item));
    }
  }
  return values;
}

PerturbationKind parse_perturbation(std::string_view text) {
  const std::string s = trim(text);
  if (s == "none") return PerturbationKind::none;
  if (s == "gaussian" || s == "gauss") return PerturbationKind::gaussian;
  if (s == "deformation" || s == "cos") return PerturbationKind::deformation;
  throw std::invalid_argument("unknown perturbation '" + s +
                              "' (expected none|gaussian|deformation)");
}

ExperimentConfig make_preset(Equation eq, double kappa, PerturbationKind kind, double t_end,
                             double gauss_scale = 1) {
  ExperimentConfig c;
  c.equation = eq;
  c.kappa = kappa;
  c.perturbation = kind;
  c.t_end = t_end;
  c.gauss_scale = gauss_scale;
  c.delta = 0.4;
  return c;
}

std::vector<Preset> build_presets() {
  using enum Equation;
  using enum PerturbationKind;
  // kappa = 0.5 runs: u scales like kappa^2, so the bump shrinks by 16 and the
  // run is 16 times longer than at kappa = 2.
  std::vector<Preset> list = {
      {"kp1-gauss-k2", "KP-I, kappa=2 cnoidal wave plus localized Gaussian-derivative bump; "
                       "wave breaks up into a periodic array of humps",
       make_preset(kp1, 2, gaussian, 2)},
      {"kp2-gauss-k2", "KP-II, kappa=2 cnoidal wave plus Gaussian-derivative bump; difference "
                       "to the bare wave smooths out over the domain",
       make_preset(kp2, 2, gaussian, 2)},
      {"kp1-gauss-k05", "KP-I, kappa=0.5 wave with bump scaled by 1/16, t_end x16; stays close "
                        "to the cnoidal wave",
       make_preset(kp1, 0.5, gaussian, 32, 1.0 / 16)},
      {"kp2-gauss-k05", "KP-II, kappa=0.5 wave with bump scaled by 1/16, t_end x16; stays close "
                        "to the cnoidal wave",
       make_preset(kp2, 0.5, gaussian, 32, 1.0 / 16)},
      {"kp1-cos-k05", "KP-I, kappa=0.5 cnoidal wave deformed by delta*cos(4y/Ly), delta=0.4; "
                      "sup norm oscillates around the crest value",
       make_preset(kp1, 0.5, deformation, 32)},
      {"kp2-cos-k05", "KP-II solution for several t from the deformed kappa=0.5 cnoidal wave; "
                      "sup norm oscillates around the crest value",
       make_preset(kp2, 0.5, deformation, 32)},
      {"kp1-cos-k2", "KP-I, deformed kappa=2 cnoidal wave; breathing doubly periodic pattern "
                     "that returns near the initial state",
       make_preset(kp1, 2, deformation, 2)},
      {"kp2-cos-k2", "KP-II, deformed kappa=2 cnoidal wave; rich oscillations with recurrence "
                     "of the initial state",
       make_preset(kp2, 2, deformation, 2)},
  };
  for (auto& p : list) {
    p.config.preset = p.name;
  }
  return list;
}

}  // namespace

std::string to_string(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::none:
      return "none";
    case PerturbationKind::gaussian:
      return "gaussian";
    case PerturbationKind::deformation:
      return "deformation";
  }
  return "none";
}

void ExperimentConfig::validate() const {
  if (!(kappa > 0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be > 0");
  if (!(k >= 0 && k < 1)) throw std::invalid_argument("k must lie in [0, 1)");
  if (!std::isfinite(u0) || !std::isfinite(x0)) throw std::invalid_argument("u0/x0 must be finite");
  if (!std::isfinite(gauss_scale)) throw std::invalid_argument("gauss-scale must be finite");
  if (!(delta >= 0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be >= 0");
  if (!(t_end > 0) || !std::isfinite(t_end)) throw std::invalid_argument("t-end must be > 0");
  if (nt < 1) throw std::invalid_argument("nt must be >= 1");
  if (periods < 1) throw std::invalid_argument("periods must be >= 1");
  if (!(ly > 0) || !std::isfinite(ly)) throw std::invalid_argument("ly must be > 0");
  if (nx < 4 || ny < 4 || nx % 2 || ny % 2) {
    throw std::invalid_argument("nx and ny must be even and >= 4");
  }
  if (sample_every < 0) throw std::invalid_argument("sample-every must be >= 0");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (perturbation == PerturbationKind::deformation && (u0 != 0 || x0 != 0)) {
    throw std::invalid_argument("deformation perturbation requires u0 = x0 = 0");
  }
  EvolveSpec{t_end, nt, resolved_snapshot_times()}.observe_steps();
}

Perturbation ExperimentConfig::perturbation_params() const {
  switch (perturbation) {
    case PerturbationKind::gaussian:
      return GaussianPerturbation{gauss_scale};
    case PerturbationKind::deformation:
      return DeformationParams{delta, ly};
    case PerturbationKind::none:
      break;
  }
  return NoPerturbation{};
}

std::vector<double> ExperimentConfig::resolved_snapshot_times() const {
  if (snapshot_times) {
    return *snapshot_times;
  }
  // Quarter points of the run, snapped to the step grid.
  std::vector<double> times;
  for (int q = 0; q <= 4; ++q) {
    const long step = nt * q / 4;
    times.push_back(t_end * static_cast<double>(step) / static_cast<double>(nt));
  }
  return times;
}

long ExperimentConfig::resolved_sample_every() const {
  if (sample_every > 0) {
    return std::min(sample_every, nt);
  }
  return std::max(1L, nt / 200);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["preset"] = preset;
  j["equation"] = to_string(equation);
  j["kappa"] = kappa;
  j["k"] = k;
  j["u0"] = u0;
  j["x0"] = x0;
  j["perturbation"] = to_string(perturbation);
  j["gauss-scale"] = gauss_scale;
  j["delta"] = delta;
  j["nx"] = nx;
  j["ny"] = ny;
  j["periods"] = periods;
  j["ly"] = ly;
  j["t-end"] = t_end;
  j["nt"] = nt;
  j["snapshots"] = resolved_snapshot_times();
  j["sample-every"] = resolved_sample_every();
  j["out"] = output_dir.string();
  j["dealias"] = dealias;
  j["threads"] = threads;
  return j;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "preset", "equation", "kappa",     "k",         "u0",   "x0",           "perturbation",
      "gauss-scale", "delta", "nx",      "ny",        "periods", "ly",        "t-end",
      "nt",     "snapshots", "sample-every", "out",   "dealias", "threads"};
  return keys;
}

void apply_setting(ExperimentConfig& cfg, std::string_view raw_key, std::string_view value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "preset") {
    const auto out = cfg.output_dir;
    cfg = preset_config(trim(value));
    cfg.output_dir = out;
  } else if (key == "equation") {
    cfg.equation = parse_equation(trim(value));
  } else if (key == "kappa") {
    cfg.kappa = parse_double(key, value);
  } else if (key == "k") {
    cfg.k = parse_double(key, value);
  } else if (key == "u0") {
    cfg.u0 = parse_double(key, value);
  } else if (key == "x0") {
    cfg.x0 = parse_double(key, value);
  } else if (key == "perturbation") {
    cfg.perturbation = parse_perturbation(value);
  } else if (key == "gauss-scale") {
    cfg.gauss_scale = parse_double(key, value);
    cfg.perturbation = PerturbationKind::gaussian;
  } else if (key == "delta") {
    cfg.delta = parse_double(key, value);
    cfg.perturbation = PerturbationKind::deformation;
  } else if (key == "nx") {
    cfg.nx = static_cast<int>(parse_integer(key, value));
  } else if (key == "ny") {
    cfg.ny = static_cast<int>(parse_integer(key, value));
  } else if (key == "periods") {
    cfg.periods = static_cast<int>(parse_integer(key, value));
  } else if (key == "ly") {
    cfg.ly = parse_double(key, value);
  } else if (key == "t-end") {
    cfg.t_end = parse_double(key, value);
  } else if (key == "nt") {
    cfg.nt = parse_integer(key, value);
  } else if (key == "snapshots") {
    cfg.snapshot_times = parse_list(key, value);
  } else if (key == "sample-every") {
    cfg.sample_every = parse_integer(key, value);
  } else if (key == "out") {
    cfg.output_dir = trim(value);
  } else if (key == "dealias") {
    cfg.dealias = parse_bool(key, value);
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(parse_integer(key, value));
  } else {
    throw std::invalid_argument("unknown configuration key '" + key + "'");
  }
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (trim(line).empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    apply_setting(cfg, std::string_view(line).substr(0, eq),
                  std::string_view(line).substr(eq + 1));
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(cfg, buffer.str());
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = build_presets();
  return list;
}

ExperimentConfig preset_config(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) {
      return p.config;
    }
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

namespace {

void write_manifest(const ExperimentConfig& cfg, const RunResult& result) {
  const auto params = cfg.cnoidal();
  nlohmann::json m;
  m["config"] = cfg.to_json();
  m["derived"] = {
      {"Lx", result.grid.lx},
      {"Ly", result.grid.ly},
      {"x_extent", 2 * std::numbers::pi * result.grid.lx},
      {"V", params.speed()},
      {"wavelength", params.wavelength()},
      {"K", complete_elliptic_k(cfg.k)},
      {"h", cfg.t_end / static_cast<double>(cfg.nt)},
      {"kappa_c", kKappaCritical},
      {"regime", cfg.kappa > kKappaCritical ? "above kappa_c" : "below kappa_c"},
  };
  m["status"] = result.failure_time ? "non-finite" : "ok";
  m["failure_time"] = result.failure_time ? nlohmann::json(*result.failure_time) : nlohmann::json();
  m["max_constraint_defect"] = result.max_constraint_defect;
  m["diagnostics"] = "diagnostics.csv";
  std::vector<std::string> files;
  for (const auto& f : result.snapshot_files) {
    files.push_back(f.filename().string());
  }
  m["snapshots"] = files;
  std::ofstream out(cfg.output_dir / "manifest.json");
  if (!out) {
    throw std::runtime_error("cannot write manifest in " + cfg.output_dir.string());
  }
  out << m.dump(2) << '\n';
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  set_transform_threads(cfg.threads > 0 ? cfg.threads
                                        : static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));

  const CnoidalParams<double> params = cfg.cnoidal();
  const Perturbation perturbation = cfg.perturbation_params();
  RunResult result{cfg.grid(), {}, {}, 0, std::nullopt, {}};
  const Grid& grid = result.grid;
  const InitialData init = assemble_initial_data(grid, params, perturbation);

  const bool write_files = !cfg.output_dir.empty();
  if (write_files) {
    std::filesystem::create_directories(cfg.output_dir);
  }

  const KPParams kp{cfg.equation};
  const LinearSymbol symbol = linear_symbol(grid, kp);
  KPNonlinearity nonlinear(grid, cfg.dealias);
  FourierTransform2d transform(grid);
  SpectralField coeffs = transform.forward(init.field);

  const double h = cfg.t_end / static_cast<double>(cfg.nt);
  const std::vector<long> snapshot_steps =
      EvolveSpec{cfg.t_end, cfg.nt, cfg.resolved_snapshot_times()}.observe_steps();
  const long every = cfg.resolved_sample_every();
  std::set<long> sample_steps;
  for (long n = 0; n <= cfg.nt; n += every) {
    sample_steps.insert(n);
  }
  sample_steps.insert(cfg.nt);
  const std::set<long> snapshot_set(snapshot_steps.begin(), snapshot_steps.end());
  std::set<long> observed = sample_steps;
  observed.insert(snapshot_steps.begin(), snapshot_steps.end());

  EvolveSpec spec{cfg.t_end, cfg.nt, {}};
  for (long n : observed) {
    spec.observe_times.push_back(static_cast<double>(n) * h);
  }

  std::optional<double> initial_l2;
  RealField physical;
  int snapshot_index = 0;
  auto observer = [&](long step, double t, const SpectralField& u_hat) {
    result.max_constraint_defect = std::max(result.max_constraint_defect, constraint_defect(u_hat));
    transform.inverse(u_hat, physical);
    if (sample_steps.contains(step)) {
      const RealField reference = traveling_reference(grid, params, perturbation, t);
      DiagnosticsRecord r =
          make_record(t, physical, u_hat, grid, kp, transform, &reference, initial_l2);
      if (!initial_l2) {
        initial_l2 = r.l2;
      }
      result.records.push_back(r);
    }
    if (write_files && snapshot_set.contains(step)) {
      char stem[32];
      std::snprintf(stem, sizeof stem, "snapshot_%04d", snapshot_index++);
      Snapshot s;
      s.metadata = {{"t", t},
                    {"step", step},
                    {"Lx", grid.lx},
                    {"Ly", grid.ly},
                    {"equation", to_string(cfg.equation)},
                    {"kappa", cfg.kappa},
                    {"k", cfg.k},
                    {"perturbation", to_string(cfg.perturbation)},
                    {"delta", cfg.perturbation == PerturbationKind::deformation ? cfg.delta : 0.0},
                    {"scale", cfg.perturbation == PerturbationKind::gaussian ? cfg.gauss_scale : 0.0}};
      s.field = physical;
      const auto payload = cfg.output_dir / (std::string(stem) + ".bin");
      write_snapshot(payload, cfg.output_dir / (std::string(stem) + ".json"), s);
      result.snapshot_files.push_back(payload);
    }
  };

  try {
    evolve(coeffs, symbol, spec, nonlinear, observer);
  } catch (const NonFiniteError& e) {
    result.failure_time = e.time();
    if (write_files) {
      write_diagnostics_csv(cfg.output_dir / "diagnostics.csv", result.records);
      write_manifest(cfg, result);
    }
    throw;
  }
  result.final_field = transform.inverse(coeffs);
  if (write_files) {
    write_diagnostics_csv(cfg.output_dir / "diagnostics.csv", result.records);
    write_manifest(cfg, result);
  }
  return result;
}

ValidationThresholds validation_thresholds(double kappa) {
  if (kappa <= kKappaCritical) {
    return {1e-11, 1e-10};
  }
  return {1e-6, 1e-8};
}

ValidationReport validate(ExperimentConfig cfg) {
  cfg.perturbation = PerturbationKind::none;
  if (cfg.sample_every == 0) {
    cfg.sample_every = std::max(1L, cfg.nt / 10);
  }
  if (!cfg.snapshot_times) {
    cfg.snapshot_times = std::vector<double>{0.0, cfg.t_end};
  }
  const RunResult run = run_experiment(cfg);
  const auto& first = run.records.front();
  const auto& last = run.records.back();
  ValidationReport report;
  report.equation = cfg.equation;
  report.kappa = cfg.kappa;
  report.nt = cfg.nt;
  report.t_end = cfg.t_end;
  report.dev_linf = last.dev_linf;
  report.delta = last.delta;
  report.energy_drift = std::abs(last.energy - first.energy) / std::abs(first.energy);
  report.thresholds = validation_thresholds(cfg.kappa);
  return report;
}

}  // namespace kpwave
