#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spikesim/model.hpp"
#include "spikesim/ode.hpp"
#include "spikesim/rng.hpp"

namespace spikesim {

/// Integer lattice coordinates. Physical values are kr * r_unit, kn * n_unit.
struct LatticeState {
  std::int64_t kr = 0;
  std::int64_t kn = 0;

  bool operator==(const LatticeState&) const = default;
};

/// Lattice steps, stored as reciprocals: r_unit = 1 / r_per_unit.
struct Lattice {
  double r_per_unit = 1.0;  // Gamma * N
  double n_per_unit = 1.0;  // N

  double r(std::int64_t kr) const { return static_cast<double>(kr) / r_per_unit; }
  double n(std::int64_t kn) const { return static_cast<double>(kn) / n_per_unit; }
  State physical(const LatticeState& s) const { return {r(s.kr), n(s.kn)}; }
  /// Nearest lattice point to a non-negative physical state.
  LatticeState nearest(const State& s) const;
};

enum class ChannelLabel : std::uint8_t {
  StimEmission,
  SpontEmission,
  Absorption,
  Pumping,
  Leak,
};

std::string to_string(ChannelLabel label);

struct JumpChannel {
  int dkr;
  int dkn;
  ChannelLabel label;
};

inline constexpr std::size_t kChannelCount = 5;

/// The five elementary transitions, shared by all three limits.
inline constexpr std::array<JumpChannel, kChannelCount> kChannels{{
    {-1, +1, ChannelLabel::StimEmission},
    {-1, +1, ChannelLabel::SpontEmission},
    {+1, -1, ChannelLabel::Absorption},
    {+1, 0, ChannelLabel::Pumping},
    {0, -1, ChannelLabel::Leak},
}};

enum class ProcessMode { Global, MeanFieldFrozen, OneUnit };

std::string to_string(ProcessMode mode);

using Rates = std::array<double, kChannelCount>;

/// Immutable description of one Markov limit: the channels, their rates and
/// the lattice they act on.
class ProcessSpec {
 public:
  ProcessMode mode() const { return mode_; }
  const ModelParams& params() const { return params_; }
  std::int64_t units() const { return units_; }
  const Lattice& lattice() const { return lattice_; }
  const std::array<JumpChannel, kChannelCount>& channels() const { return kChannels; }
  /// Mean-field anchor (r*, n*) unless time-coupled; zero otherwise.
  const State& anchor() const { return anchor_; }
  /// True for the time-coupled mean-field variant.
  bool time_dependent() const { return coupling_ != nullptr; }

  /// Channel intensities at s. A channel whose jump would take a coordinate
  /// below zero has rate 0. `t` matters only for the time-coupled variant.
  Rates rates(const LatticeState& s, double t = 0.0) const;
  double rate(std::size_t channel, const LatticeState& s, double t = 0.0) const {
    return rates(s, t).at(channel);
  }
  /// Rate before boundary censoring.
  Rates raw_rates(const LatticeState& s, double t = 0.0) const;

 private:
  friend ProcessSpec build_global(const ModelParams&, std::int64_t);
  friend ProcessSpec build_meanfield(const ModelParams&, std::optional<State>);
  friend ProcessSpec build_meanfield_coupled(const ModelParams&,
                                             std::shared_ptr<const Trajectory>);
  friend ProcessSpec build_oneunit(const ModelParams&);

  ProcessSpec(ProcessMode mode, const ModelParams& params, std::int64_t units,
              Lattice lattice, State anchor)
      : mode_(mode), params_(params), units_(units), lattice_(lattice), anchor_(anchor) {}

  State anchor_at(double t) const;

  ProcessMode mode_;
  ModelParams params_;
  std::int64_t units_;
  Lattice lattice_;
  State anchor_;
  std::shared_ptr<const Trajectory> coupling_;
};

/// N-unit density process on (1/(Gamma N)) Z+ x (1/N) Z+.
ProcessSpec build_global(const ModelParams& params, std::int64_t n_units);

/// Single trajectory with the stimulated-emission rate frozen at `anchor`
/// (default: the stationary point).
ProcessSpec build_meanfield(const ModelParams& params,
                            std::optional<State> anchor = std::nullopt);

/// Mean-field variant whose anchor follows a deterministic solution. Rates are
/// re-read at each jump and held fixed until the next one, so waiting times
/// are only approximately correct when the anchor moves quickly.
ProcessSpec build_meanfield_coupled(const ModelParams& params,
                                    std::shared_ptr<const Trajectory> anchor_path);

/// N = 1 chain on (1/Gamma) Z+ x Z+.
ProcessSpec build_oneunit(const ModelParams& params);

struct JumpDraw {
  double wait;
  std::size_t channel;
};

/// Direct-method step: exponential holding time with the total rate, then a
/// channel drawn in proportion to its rate. nullopt when the state absorbs.
std::optional<JumpDraw> next_jump(const ProcessSpec& spec, const LatticeState& s,
                                  Rng& rng, double t = 0.0);

struct JumpEvent {
  double t;
  LatticeState state;  // after the jump
  ChannelLabel channel;
};

enum class Termination { TimeHorizon, MaxJumps, Absorbed };

std::string to_string(Termination termination);

struct Horizon {
  std::optional<double> t_end;
  std::optional<std::size_t> max_jumps;
};

struct SimulationOptions {
  std::size_t max_events = 10'000'000;
};

struct JumpTrajectory {
  ProcessMode mode = ProcessMode::OneUnit;
  Lattice lattice;
  LatticeState initial;
  std::uint64_t seed = 0;
  std::vector<JumpEvent> events;
  Termination terminated_by = Termination::TimeHorizon;
  /// Path is known on [0, observed_until]; +inf once absorbed.
  double observed_until = 0.0;

  /// Right-continuous state at time t.
  LatticeState state_at(double t) const;
};

class EventCapExceeded : public std::runtime_error {
 public:
  explicit EventCapExceeded(std::size_t cap)
      : std::runtime_error("jump trajectory exceeded the event cap of " +
                           std::to_string(cap)) {}
};

JumpTrajectory simulate(const ProcessSpec& spec, const LatticeState& initial,
                        const Horizon& horizon, std::uint64_t seed,
                        const SimulationOptions& options = {});

/// Paths k = 0..count-1 with seeds derive_seed(seed, k); output order and
/// content do not depend on `threads`.
std::vector<JumpTrajectory> simulate_ensemble(const ProcessSpec& spec,
                                              const LatticeState& initial,
                                              const Horizon& horizon,
                                              std::uint64_t seed, std::size_t count,
                                              unsigned threads = 0,
                                              const SimulationOptions& options = {});

/// Sum over channels of rate times physical increment.
Derivative expected_drift(const ProcessSpec& spec, const LatticeState& s,
                          double t = 0.0);

/// Continuous mean-field dynamics with the stimulated term linearized around
/// `anchor`.
Derivative meanfield_vector_field(const ModelParams& params, const State& anchor,
                                  const State& s);

}  // namespace spikesim
