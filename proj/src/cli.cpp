#include "spikesim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "spikesim/io.hpp"
#include "spikesim/jump.hpp"
#include "spikesim/lyapunov.hpp"
#include "spikesim/ode.hpp"
#include "spikesim/spikes.hpp"

namespace spikesim {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot write output file '" + path.string() + "'");
  out.imbue(std::locale::classic());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw OutputError("failed while writing '" + path.string() + "'");
}

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const std::string& suffix) {
  return prefix.string() + suffix;
}

Metadata run_metadata(const RunConfig& cfg) {
  Metadata meta = params_metadata(cfg.params);
  meta.emplace_back("mode", to_string(cfg.mode));
  if (cfg.mode == RunMode::Global) meta.emplace_back("n_units", std::to_string(cfg.n_units));
  meta.emplace_back("r0", format_number(cfg.initial.r));
  meta.emplace_back("n0", format_number(cfg.initial.n));
  meta.emplace_back("t_end", format_number(cfg.t_end));
  if (cfg.max_jumps) meta.emplace_back("max_jumps", std::to_string(*cfg.max_jumps));
  if (cfg.mode == RunMode::Ds) meta.emplace_back("dt", format_number(cfg.dt));
  if (cfg.coupled) meta.emplace_back("coupled", "true");
  meta.emplace_back("seed", std::to_string(cfg.seed));
  return meta;
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j{{"tool", "spikesim"},
                   {"version", kToolVersion},
                   {"name", cfg.name},
                   {"params", to_json(cfg.params)},
                   {"mode", to_string(cfg.mode)},
                   {"initial", to_json(cfg.initial)},
                   {"t_end", cfg.t_end},
                   {"seed", cfg.seed},
                   {"paths", cfg.paths}};
  if (cfg.mode == RunMode::Global) j["n_units"] = cfg.n_units;
  if (cfg.mode == RunMode::Ds) j["dt"] = cfg.dt;
  j["max_jumps"] = cfg.max_jumps ? nlohmann::json(*cfg.max_jumps) : nlohmann::json(nullptr);
  j["coupled"] = cfg.coupled;
  j["a0"] = cfg.a0 ? nlohmann::json(*cfg.a0) : nlohmann::json(nullptr);
  j["thr"] = cfg.thr ? nlohmann::json(*cfg.thr) : nlohmann::json(nullptr);
  return j;
}

void validate(const RunConfig& cfg) {
  if (cfg.initial.r < 0.0 || cfg.initial.n < 0.0)
    throw std::invalid_argument("initial state (r0, n0) must be non-negative");
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("t-end must be > 0");
  if (cfg.paths < 1) throw std::invalid_argument("paths must be >= 1");
  if (cfg.a0 && !(*cfg.a0 > 0.0)) throw std::invalid_argument("a0 must be > 0");
  if (cfg.thr && !(*cfg.thr >= 0.0)) throw std::invalid_argument("thr must be >= 0");
  if (cfg.mode == RunMode::Ds && cfg.max_jumps)
    throw std::invalid_argument("max-jumps applies only to jump processes, not ds");
  if (cfg.coupled && cfg.mode != RunMode::MeanField)
    throw std::invalid_argument("coupled applies only to the meanfield mode");
  if (cfg.mode == RunMode::Global && cfg.n_units < 1)
    throw std::invalid_argument("n-units must be >= 1");
}

IntegrationSettings ode_settings(const RunConfig& cfg) {
  return {cfg.t_end, cfg.dt, default_stride(cfg.t_end, cfg.dt)};
}

ProcessSpec make_process(const RunConfig& cfg) {
  switch (cfg.mode) {
    case RunMode::Global: return build_global(cfg.params, cfg.n_units);
    case RunMode::OneUnit: return build_oneunit(cfg.params);
    case RunMode::MeanField:
      if (cfg.coupled) {
        auto path = std::make_shared<const Trajectory>(
            integrate(cfg.params, cfg.initial, ode_settings(cfg)));
        return build_meanfield_coupled(cfg.params, std::move(path));
      }
      return build_meanfield(cfg.params);
    case RunMode::Ds: break;
  }
  throw std::logic_error("no jump process for ds mode");
}

nlohmann::json analyze_series(const Series& series, const RunConfig& cfg,
                              const std::filesystem::path& prefix, const Metadata& meta) {
  nlohmann::json j = nlohmann::json::object();
  std::vector<SpikeRecord> spikes;
  if (cfg.a0) {
    spikes = detect_spikes(series, *cfg.a0);
    j["n_spikes"] = spikes.size();
    const auto amps = amplitudes(spikes);
    try {
      const TailFit fit = fit_exponential(amps, *cfg.a0);
      j["tail_fit"] = to_json(fit);
    } catch (const InsufficientData&) {
      j["tail_fit"] = nullptr;
    }
    if (!amps.empty()) {
      const auto path = with_suffix(prefix, "_survival.csv");
      auto out = open_output(path);
      write_survival_csv(out, tail_survival(amps, *cfg.a0), meta);
      finish(out, path);
    }
  }
  if (cfg.thr) {
    const auto plateaus = detect_plateaus(series, *cfg.thr);
    j["n_plateaus"] = plateaus.size();
    double total = 0.0;
    for (const auto& p : plateaus) total += p.length;
    j["plateau_time"] = total;
    if (cfg.a0) {
      const auto pairs = pair_plateau_spike(plateaus, spikes);
      j["n_pairs"] = pairs.size();
      try {
        j["correlation"] = to_json(correlation(pairs));
      } catch (const InsufficientData&) {
        j["correlation"] = nullptr;
      }
      const auto path = with_suffix(prefix, "_pairs.csv");
      auto out = open_output(path);
      write_pairs_csv(out, pairs, meta);
      finish(out, path);
    }
  }
  return j;
}

nlohmann::json execute_ds(const RunConfig& cfg, const std::filesystem::path& prefix) {
  const Trajectory traj = integrate(cfg.params, cfg.initial, ode_settings(cfg));
  const Metadata meta = run_metadata(cfg);
  const auto csv = with_suffix(prefix, ".csv");
  auto out = open_output(csv);
  write_trajectory_csv(out, traj, meta);
  finish(out, csv);

  nlohmann::json j = config_json(cfg);
  j["files"] = {csv.filename().string()};
  j["terminal_state"] = to_json(traj.samples.back().state);
  j["clamp_count"] = traj.clamp_count;
  j["samples"] = traj.samples.size();
  if (cfg.params.z() > 0.0) j["stationary_point"] = to_json(stationary_point(cfg.params));
  nlohmann::json analysis = analyze_series(photon_series(traj), cfg, prefix, meta);
  if (!analysis.empty()) j["analysis"] = analysis;
  return j;
}

nlohmann::json execute_jumps(const RunConfig& cfg, const std::filesystem::path& prefix,
                             unsigned threads) {
  const ProcessSpec spec = make_process(cfg);
  const LatticeState initial = spec.lattice().nearest(cfg.initial);
  const Horizon horizon{cfg.t_end, cfg.max_jumps};
  std::optional<Trajectory> reference;
  if (cfg.lln) reference = integrate(cfg.params, cfg.initial, ode_settings(cfg));

  std::vector<nlohmann::json> per_path(cfg.paths);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.paths));

  auto run_path = [&](std::size_t k) {
    const std::uint64_t path_seed = derive_seed(cfg.seed, k);
    const JumpTrajectory traj = simulate(spec, initial, horizon, path_seed);
    Metadata meta = run_metadata(cfg);
    meta.emplace_back("path", std::to_string(k));
    meta.emplace_back("path_seed", std::to_string(path_seed));

    const auto path_prefix = with_suffix(prefix, "_seed" + std::to_string(k));
    nlohmann::json j{{"path", k},
                     {"path_seed", path_seed},
                     {"events", traj.events.size()},
                     {"terminated_by", to_string(traj.terminated_by)},
                     {"initial_lattice", to_json(initial)}};
    if (cfg.write_paths) {
      const auto csv = with_suffix(path_prefix, ".csv");
      auto out = open_output(csv);
      write_jump_csv(out, traj, meta);
      finish(out, csv);
      j["file"] = csv.filename().string();
    }
    j.update(analyze_series(photon_series(traj), cfg, path_prefix, meta));
    if (reference) {
      const double horizon_t = std::min(cfg.t_end, traj.observed_until);
      j["lln_sup_distance"] = lln_sup_distance(traj, *reference, horizon_t);
    }
    per_path[k] = std::move(j);
  };

  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < cfg.paths; k += threads) run_path(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  nlohmann::json j = config_json(cfg);
  j["path_reports"] = per_path;
  if (cfg.lln) {
    double sum = 0.0;
    for (const auto& p : per_path) sum += p["lln_sup_distance"].get<double>();
    j["lln_mean_sup_distance"] = sum / static_cast<double>(per_path.size());
  }
  return j;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

void emit_json(const nlohmann::json& j, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << j.dump(2) << '\n';
  } else {
    write_json_file(out_path, j);
  }
}

const std::vector<std::string>& common_flags() {
  static const std::vector<std::string> flags{"alpha", "beta",      "gamma", "p",  "n-units",
                                              "seed",  "t-end",     "max-jumps", "r0", "n0",
                                              "a0",    "thr",       "out"};
  return flags;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Defaults < config file < SPIKESIM_* environment < command line. Config and
// environment values become leading flags; the last occurrence of a flag wins.
std::vector<std::string> layered_arguments(const std::vector<std::string>& args) {
  std::vector<std::string> user;
  std::optional<std::string> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file name");
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      user.push_back(args[i]);
    }
  }
  const auto& flags = common_flags();
  std::vector<std::string> out;
  if (config) {
    std::ifstream in(*config);
    if (!in) throw std::invalid_argument("cannot read config file '" + *config + "'");
    std::string line;
    while (std::getline(in, line)) {
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config line is not key=value: '" + t + "'");
      std::string key = trim(std::string_view(t).substr(0, eq));
      if (key.rfind("--", 0) == 0) key.erase(0, 2);
      std::replace(key.begin(), key.end(), '_', '-');
      if (std::find(flags.begin(), flags.end(), key) == flags.end())
        throw std::invalid_argument("unknown config key '" + key + "'");
      out.push_back("--" + key);
      out.push_back(trim(std::string_view(t).substr(eq + 1)));
    }
  }
  for (const auto& flag : flags) {
    std::string name = "SPIKESIM_" + flag;
    for (char& c : name) c = c == '-' ? '_' : static_cast<char>(std::toupper(c));
    if (const char* value = std::getenv(name.c_str())) {
      out.push_back("--" + flag);
      out.push_back(value);
    }
  }
  out.insert(out.end(), user.begin(), user.end());
  return out;
}

RunConfig make_config(std::string name, double gamma, RunMode mode) {
  RunConfig cfg;
  cfg.name = std::move(name);
  cfg.params = ModelParams(0.01, 1.0, gamma, 7.0);
  cfg.mode = mode;
  return cfg;
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Ds: return "ds";
    case RunMode::Global: return "global";
    case RunMode::MeanField: return "meanfield";
    case RunMode::OneUnit: return "oneunit";
  }
  return "unknown";
}

RunMode parse_run_mode(std::string_view text) {
  if (text == "ds") return RunMode::Ds;
  if (text == "global") return RunMode::Global;
  if (text == "meanfield") return RunMode::MeanField;
  if (text == "oneunit") return RunMode::OneUnit;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig5", "fig6", "fig7"};
  return names;
}

std::vector<RunConfig> preset(std::string_view name) {
  std::vector<RunConfig> runs;
  if (name == "fig1" || name == "fig2") {
    const double gamma = name == "fig1" ? 100.0 : 2.0;
    const std::string stem(name);
    runs.push_back(make_config(stem + "_ds", gamma, RunMode::Ds));
    for (std::int64_t n : {10, 50}) {
      RunConfig cfg = make_config(stem + "_global" + std::to_string(n), gamma, RunMode::Global);
      cfg.n_units = n;
      runs.push_back(cfg);
    }
    return runs;
  }
  if (name == "fig3") {
    for (double gamma : {100.0, 2.0}) {
      const std::string stem = "fig3_gamma" + std::to_string(static_cast<int>(gamma));
      runs.push_back(make_config(stem + "_ds", gamma, RunMode::Ds));
      runs.push_back(make_config(stem + "_meanfield", gamma, RunMode::MeanField));
    }
    return runs;
  }
  if (name == "fig5") {
    for (double gamma : {100.0, 2.0})
      runs.push_back(make_config("fig5_gamma" + std::to_string(static_cast<int>(gamma)) + "_oneunit",
                                 gamma, RunMode::OneUnit));
    return runs;
  }
  // Spike thresholds: a0 = 10 at Gamma = 100, a0 = 20 at Gamma = 2.
  if (name == "fig6") {
    for (auto [gamma, a0] : {std::pair{100.0, 10.0}, std::pair{2.0, 20.0}}) {
      RunConfig cfg = make_config("fig6_gamma" + std::to_string(static_cast<int>(gamma)), gamma,
                                  RunMode::OneUnit);
      cfg.t_end = 1e5;
      cfg.a0 = a0;
      cfg.write_paths = false;
      runs.push_back(cfg);
    }
    return runs;
  }
  if (name == "fig7") {
    for (auto [gamma, a0] : {std::pair{100.0, 10.0}, std::pair{2.0, 20.0}}) {
      for (double thr : {0.0, 10.0}) {
        RunConfig cfg = make_config("fig7_gamma" + std::to_string(static_cast<int>(gamma)) +
                                        "_thr" + std::to_string(static_cast<int>(thr)),
                                    gamma, RunMode::OneUnit);
        cfg.t_end = 1e5;
        cfg.a0 = a0;
        cfg.thr = thr;
        cfg.write_paths = false;
        runs.push_back(cfg);
      }
    }
    return runs;
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

nlohmann::json execute(const RunConfig& config, const std::filesystem::path& prefix,
                       unsigned threads) {
  validate(config);
  nlohmann::json j = config.mode == RunMode::Ds ? execute_ds(config, prefix)
                                                : execute_jumps(config, prefix, threads);
  write_json_file(with_suffix(prefix, ".json"), j);
  return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic matter-radiation spike simulator"};
  app.name("spikesim");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "Flat key=value file for the common options");

  double alpha = 0.01, beta = 1.0, gamma = 100.0, p = 7.0;
  double r0 = 0.01, n0 = 0.01, t_end = 200.0;
  std::int64_t n_units = 10;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_jumps;
  std::optional<double> a0, thr;
  std::string out_path;

  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--alpha", alpha, "Spontaneous emission rate")->capture_default_str();
  app.add_option("--beta", beta, "Inverse photon leak rate")->capture_default_str();
  app.add_option("--gamma", gamma, "Atomic/photon time-scale ratio")->capture_default_str();
  app.add_option("--p", p, "Specific pumping")->capture_default_str();
  app.add_option("--n-units", n_units, "Units N of the global process")->capture_default_str();
  app.add_option("--seed", seed, "Root 64-bit seed")->capture_default_str();
  app.add_option("--t-end", t_end, "Time horizon")->capture_default_str();
  app.add_option("--max-jumps", max_jumps, "Jump-count horizon");
  app.add_option("--r0", r0, "Initial inversion")->capture_default_str();
  app.add_option("--n0", n0, "Initial photon density")->capture_default_str();
  app.add_option("--a0", a0, "Spike amplitude threshold");
  app.add_option("--thr", thr, "Plateau threshold");
  app.add_option("--out", out_path, "Output file or prefix");

  auto* ds = app.add_subcommand("ds", "Integrate the deterministic rate equations (CSV t,r,n)");
  double dt = 1e-3;
  std::size_t sample_every = 0;
  ds->add_option("--dt", dt, "RK4 step")->capture_default_str();
  ds->add_option("--sample-every", sample_every, "Keep every k-th step (default: <= 200k samples)");

  auto* stability = app.add_subcommand("stability", "Fixed point and linear stability (JSON)");

  auto* sim = app.add_subcommand("simulate", "Exact jump-process simulation (CSV t,r,n,channel)");
  std::string mode_text = "oneunit";
  std::size_t paths = 1;
  unsigned threads = 0;
  bool coupled = false, lln = false, no_paths_csv = false;
  sim->add_option("--mode", mode_text, "global | meanfield | oneunit")
      ->check(CLI::IsMember({"global", "meanfield", "oneunit"}))
      ->capture_default_str();
  sim->add_option("--paths", paths, "Number of ensemble paths")->capture_default_str();
  sim->add_option("--threads", threads, "Worker threads (0 = hardware)");
  sim->add_flag("--coupled", coupled, "Mean-field anchor follows the ODE solution");
  sim->add_flag("--lln", lln, "Report sup-distance to the ODE solution");
  sim->add_flag("--no-paths-csv", no_paths_csv, "Skip per-path trajectory CSVs");
  sim->add_option("--dt", dt, "RK4 step for the ODE reference")->capture_default_str();

  auto* lyap = app.add_subcommand("lyapunov", "Drift scan of the Lyapunov function (JSON)");
  std::string drift_mode = "oneunit";
  double epsilon = 0.1;
  std::optional<std::int64_t> kr_max, kn_max;
  lyap->add_option("--mode", drift_mode, "meanfield | oneunit")
      ->check(CLI::IsMember({"meanfield", "oneunit"}))
      ->capture_default_str();
  lyap->add_option("--epsilon", epsilon, "Drift margin")->capture_default_str();
  lyap->add_option("--kr-max", kr_max, "Scan box kr extent (default: auto)");
  lyap->add_option("--kn-max", kn_max, "Scan box kn extent (default: auto)");

  auto* pre = app.add_subcommand("preset", "Run a figure recipe into --out directory");
  std::string preset_name;
  pre->add_option("name", preset_name, "Preset name")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  pre->add_option("--paths", paths, "Paths per run")->capture_default_str();
  pre->add_option("--threads", threads, "Worker threads (0 = hardware)");

  std::vector<std::string> tokens;
  try {
    tokens = layered_arguments(args);
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return 1;
  }
  std::vector<const char*> argv{"spikesim"};
  for (const auto& a : tokens) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg;
    try {
      cfg.params = ModelParams(alpha, beta, gamma, p);
    } catch (const std::invalid_argument& e) {
      err << "invalid parameter combination: " << e.what() << '\n';
      return 1;
    }
    cfg.initial = {r0, n0};
    cfg.t_end = t_end;
    cfg.max_jumps = max_jumps;
    cfg.seed = seed;
    cfg.n_units = n_units;
    cfg.a0 = a0;
    cfg.thr = thr;
    cfg.dt = dt;
    cfg.paths = paths;

    if (*ds) {
      cfg.name = "ds";
      cfg.mode = RunMode::Ds;
      validate(cfg);
      IntegrationSettings settings{t_end, dt, sample_every ? sample_every
                                                           : default_stride(t_end, dt)};
      const Trajectory traj = integrate(cfg.params, cfg.initial, settings);
      Metadata meta = run_metadata(cfg);
      if (out_path.empty() || out_path == "-") {
        write_trajectory_csv(out, traj, meta);
      } else {
        auto file = open_output(out_path);
        write_trajectory_csv(file, traj, meta);
        finish(file, out_path);
      }
      if (traj.clamp_count > 0)
        err << "warning: " << traj.clamp_count << " steps clamped a tiny negative component\n";
      return 0;
    }
    if (*stability) {
      nlohmann::json j = to_json(analyze_stability(cfg.params));
      j["params"] = to_json(cfg.params);
      j["version"] = kToolVersion;
      j["seed"] = seed;
      emit_json(j, out_path, out);
      return 0;
    }
    if (*sim) {
      cfg.name = "simulate";
      cfg.mode = parse_run_mode(mode_text);
      cfg.coupled = coupled;
      cfg.lln = lln;
      cfg.write_paths = !no_paths_csv;
      validate(cfg);
      if (out_path == "-") {
        if (paths != 1) throw std::invalid_argument("--out - needs a single path");
        const ProcessSpec spec = make_process(cfg);
        const JumpTrajectory traj = simulate(spec, spec.lattice().nearest(cfg.initial),
                                             {cfg.t_end, cfg.max_jumps}, derive_seed(seed, 0));
        Metadata meta = run_metadata(cfg);
        meta.emplace_back("path", "0");
        meta.emplace_back("path_seed", std::to_string(traj.seed));
        write_jump_csv(out, traj, meta);
        return 0;
      }
      const nlohmann::json j = execute(cfg, out_path.empty() ? "simulate" : out_path, threads);
      out << j.dump(2) << '\n';
      return 0;
    }
    if (*lyap) {
      const DriftMode mode = drift_mode == "oneunit" ? DriftMode::OneUnit
                                                     : DriftMode::MeanFieldFrozen;
      std::optional<ScanBox> box;
      if (kr_max || kn_max) {
        const ScanBox automatic =
            auto_scan_box(mode, cfg.params,
                          mode == DriftMode::OneUnit ? State{} : stationary_point(cfg.params),
                          epsilon);
        box = ScanBox{kr_max.value_or(automatic.kr_max), kn_max.value_or(automatic.kn_max)};
      }
      nlohmann::json j = to_json(scan_set_A(mode, cfg.params, std::nullopt, epsilon, box));
      j["params"] = to_json(cfg.params);
      j["version"] = kToolVersion;
      j["seed"] = seed;
      emit_json(j, out_path, out);
      return 0;
    }
    if (*pre) {
      const std::filesystem::path dir = out_path.empty() ? "." : out_path;
      nlohmann::json summary = nlohmann::json::array();
      for (RunConfig run : preset(preset_name)) {
        if (app.count("--seed")) run.seed = seed;
        run.paths = paths;
        const nlohmann::json j = execute(run, dir / run.name, threads);
        summary.push_back({{"name", run.name}, {"report", run.name + ".json"}});
      }
      out << summary.dump(2) << '\n';
      return 0;
    }
  } catch (const OutputError& e) {
    err << "output error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameter combination: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "invalid parameter combination: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace spikesim
