#include "spikesim/jump.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace spikesim {

LatticeState Lattice::nearest(const State& s) const {
  if (s.r < 0.0 || s.n < 0.0)
    throw std::invalid_argument("lattice states must be non-negative");
  return {std::llround(s.r * r_per_unit), std::llround(s.n * n_per_unit)};
}

std::string to_string(ChannelLabel label) {
  switch (label) {
    case ChannelLabel::StimEmission: return "stim-emission";
    case ChannelLabel::SpontEmission: return "spont-emission";
    case ChannelLabel::Absorption: return "absorption";
    case ChannelLabel::Pumping: return "pumping";
    case ChannelLabel::Leak: return "leak";
  }
  return "unknown";
}

std::string to_string(ProcessMode mode) {
  switch (mode) {
    case ProcessMode::Global: return "global";
    case ProcessMode::MeanFieldFrozen: return "meanfield";
    case ProcessMode::OneUnit: return "oneunit";
  }
  return "unknown";
}

std::string to_string(Termination termination) {
  switch (termination) {
    case Termination::TimeHorizon: return "TimeHorizon";
    case Termination::MaxJumps: return "MaxJumps";
    case Termination::Absorbed: return "Absorbed";
  }
  return "unknown";
}

ProcessSpec build_global(const ModelParams& params, std::int64_t n_units) {
  if (n_units < 1) throw std::invalid_argument("N must be >= 1");
  const auto n = static_cast<double>(n_units);
  return {ProcessMode::Global, params, n_units, Lattice{params.gamma() * n, n}, State{}};
}

ProcessSpec build_oneunit(const ModelParams& params) {
  return {ProcessMode::OneUnit, params, 1, Lattice{params.gamma(), 1.0}, State{}};
}

ProcessSpec build_meanfield(const ModelParams& params, std::optional<State> anchor) {
  const State a = anchor ? *anchor : stationary_point(params);
  if (!(a.r >= 0.0) || !(a.n >= 0.0))
    throw std::invalid_argument("mean-field anchor must be non-negative");
  return {ProcessMode::MeanFieldFrozen, params, 1, Lattice{params.gamma(), 1.0}, a};
}

ProcessSpec build_meanfield_coupled(const ModelParams& params,
                                    std::shared_ptr<const Trajectory> anchor_path) {
  if (!anchor_path || anchor_path->samples.empty())
    throw std::invalid_argument("coupled mean-field needs a non-empty anchor path");
  ProcessSpec spec = build_meanfield(params, anchor_path->samples.front().state);
  spec.coupling_ = std::move(anchor_path);
  return spec;
}

State ProcessSpec::anchor_at(double t) const {
  return coupling_ ? coupling_->at(t) : anchor_;
}

Rates ProcessSpec::raw_rates(const LatticeState& s, double t) const {
  const double alpha = params_.alpha();
  const double x = lattice_.r(s.kr);
  const double y = lattice_.n(s.kn);
  const double pump = params_.p();
  const double leak = y / params_.beta();

  if (mode_ == ProcessMode::MeanFieldFrozen) {
    const State a = anchor_at(t);
    return {0.5 * (x * a.n + a.r * y), alpha * x, y, pump, leak};
  }
  // Global(N) and one-unit (N = 1) share the same density-dependent form.
  const auto n = static_cast<double>(units_);
  return {n * x * y, n * alpha * x, n * y, n * pump, n * leak};
}

Rates ProcessSpec::rates(const LatticeState& s, double t) const {
  Rates out = raw_rates(s, t);
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    if (s.kr + kChannels[i].dkr < 0 || s.kn + kChannels[i].dkn < 0) out[i] = 0.0;
  }
  return out;
}

std::optional<JumpDraw> next_jump(const ProcessSpec& spec, const LatticeState& s,
                                  Rng& rng, double t) {
  const Rates r = spec.rates(s, t);
  double total = 0.0;
  for (double v : r) total += v;
  if (!(total > 0.0)) return std::nullopt;

  const double wait = rng.exponential(total);
  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  std::size_t chosen = kChannelCount;
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    if (r[i] <= 0.0) continue;
    chosen = i;
    cumulative += r[i];
    if (target < cumulative) break;
  }
  return JumpDraw{wait, chosen};
}

LatticeState JumpTrajectory::state_at(double t) const {
  auto it = std::upper_bound(events.begin(), events.end(), t,
                             [](double v, const JumpEvent& e) { return v < e.t; });
  return it == events.begin() ? initial : std::prev(it)->state;
}

JumpTrajectory simulate(const ProcessSpec& spec, const LatticeState& initial,
                        const Horizon& horizon, std::uint64_t seed,
                        const SimulationOptions& options) {
  if (initial.kr < 0 || initial.kn < 0)
    throw std::invalid_argument("initial lattice state must be non-negative");
  if (horizon.t_end && !(*horizon.t_end >= 0.0))
    throw std::invalid_argument("t_end must be >= 0");
  if (!horizon.t_end && !horizon.max_jumps)
    throw std::invalid_argument("simulation needs t_end or max_jumps");

  JumpTrajectory traj;
  traj.mode = spec.mode();
  traj.lattice = spec.lattice();
  traj.initial = initial;
  traj.seed = seed;

  Rng rng(seed);
  LatticeState s = initial;
  double t = 0.0;
  const double t_end = horizon.t_end.value_or(std::numeric_limits<double>::infinity());
  const std::size_t max_jumps =
      horizon.max_jumps.value_or(std::numeric_limits<std::size_t>::max());

  while (true) {
    if (traj.events.size() >= max_jumps) {
      traj.terminated_by = Termination::MaxJumps;
      traj.observed_until = t;
      break;
    }
    const auto draw = next_jump(spec, s, rng, t);
    if (!draw) {
      traj.terminated_by = Termination::Absorbed;
      traj.observed_until = std::numeric_limits<double>::infinity();
      break;
    }
    const double t_next = t + draw->wait;
    if (t_next > t_end) {
      traj.terminated_by = Termination::TimeHorizon;
      traj.observed_until = t_end;
      break;
    }
    if (traj.events.size() >= options.max_events)
      throw EventCapExceeded(options.max_events);

    const JumpChannel& ch = kChannels[draw->channel];
    s.kr += ch.dkr;
    s.kn += ch.dkn;
    if (s.kr < 0 || s.kn < 0)
      throw std::logic_error("jump left the non-negative lattice");
    t = t_next;
    traj.events.push_back({t, s, ch.label});
  }
  return traj;
}

std::vector<JumpTrajectory> simulate_ensemble(const ProcessSpec& spec,
                                              const LatticeState& initial,
                                              const Horizon& horizon,
                                              std::uint64_t seed, std::size_t count,
                                              unsigned threads,
                                              const SimulationOptions& options) {
  std::vector<JumpTrajectory> out(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < count; k += threads)
            out[k] = simulate(spec, initial, horizon, derive_seed(seed, k), options);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

Derivative expected_drift(const ProcessSpec& spec, const LatticeState& s, double t) {
  const Rates r = spec.rates(s, t);
  double dkr = 0.0;
  double dkn = 0.0;
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    dkr += r[i] * kChannels[i].dkr;
    dkn += r[i] * kChannels[i].dkn;
  }
  return {dkr / spec.lattice().r_per_unit, dkn / spec.lattice().n_per_unit};
}

Derivative meanfield_vector_field(const ModelParams& params, const State& anchor,
                                  const State& s) {
  const double g = params.gamma();
  const double emission = 0.5 * (s.r * anchor.n + s.n * anchor.r) + params.alpha() * s.r;
  const double dr = (-emission + s.n + params.p()) / g;
  const double dn = emission - s.n - s.n / params.beta();
  return {dr, dn};
}

}  // namespace spikesim
