#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "spikesim/model.hpp"

namespace spikesim {

enum class RunMode { Ds, Global, MeanField, OneUnit };

std::string to_string(RunMode mode);
RunMode parse_run_mode(std::string_view text);

/// One experiment: a model, a process (or the ODE), a horizon and the
/// analyses to run on the result.
struct RunConfig {
  std::string name = "run";
  ModelParams params{0.01, 1.0, 100.0, 7.0};
  RunMode mode = RunMode::Ds;
  std::int64_t n_units = 10;
  State initial{0.01, 0.01};
  double t_end = 200.0;
  std::optional<std::size_t> max_jumps;
  std::uint64_t seed = 1;
  std::size_t paths = 1;
  double dt = 1e-3;
  bool coupled = false;
  std::optional<double> a0;
  std::optional<double> thr;
  bool lln = false;
  bool write_paths = true;
};

/// Runs behind a figure: e.g. fig1 is the ODE plus global N=10 and N=50 at
/// Gamma=100. Unknown names throw std::invalid_argument.
std::vector<RunConfig> preset(std::string_view name);

const std::vector<std::string>& preset_names();

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Executes one run. Files are written as `<prefix>.csv` (ODE) or
/// `<prefix>_seed<k>.csv` per path, plus `<prefix>.json` with the aggregate
/// report, which is also returned.
nlohmann::json execute(const RunConfig& config, const std::filesystem::path& prefix,
                       unsigned threads = 0);

/// Full command line. Exit codes: 0 success, 1 usage error, 2 runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spikesim
