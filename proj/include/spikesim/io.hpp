#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "spikesim/jump.hpp"
#include "spikesim/lyapunov.hpp"
#include "spikesim/model.hpp"
#include "spikesim/ode.hpp"
#include "spikesim/spikes.hpp"

namespace spikesim {

inline constexpr const char* kToolVersion = "0.1.0";

/// Ordered key=value pairs written as `# key=value` lines above a CSV header.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Shortest round-trip decimal, independent of the global locale.
std::string format_number(double v);

Metadata params_metadata(const ModelParams& params);

void write_metadata(std::ostream& out, const Metadata& meta);

/// Header `t,r,n`.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const Metadata& meta);

/// Header `t,r,n,channel`; the first row is the initial state with channel
/// `initial`.
void write_jump_csv(std::ostream& out, const JumpTrajectory& traj, const Metadata& meta);

/// Header `plateau_length,amplitude`.
void write_pairs_csv(std::ostream& out, std::span<const PlateauSpikePair> pairs,
                     const Metadata& meta);

/// Header `a,survival`.
void write_survival_csv(std::ostream& out, const SurvivalCurve& curve, const Metadata& meta);

nlohmann::json to_json(const ModelParams& params);
nlohmann::json to_json(const State& s);
nlohmann::json to_json(const LatticeState& s);
nlohmann::json to_json(const StabilityReport& report);
nlohmann::json to_json(const DriftReport& report);
nlohmann::json to_json(const TailFit& fit);
nlohmann::json to_json(const Correlation& corr);
nlohmann::json to_json(const SpikeRecord& spike);
nlohmann::json to_json(const PlateauRecord& plateau);

}  // namespace spikesim
