#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "spikesim/model.hpp"

namespace spikesim {

struct TimedState {
  double t = 0.0;
  State state;
};

struct IntegrationSettings {
  double t_end = 200.0;
  double dt = 1e-3;
  std::size_t sample_every = 1;
};

/// Fixed-step RK4 solution of the rate equations.
struct Trajectory {
  ModelParams params;
  State initial;
  IntegrationSettings settings;
  std::vector<TimedState> samples;
  /// Steps where a component in [-1e-9, 0) was clamped to zero.
  std::size_t clamp_count = 0;

  /// Piecewise-linear interpolation between samples; t is clamped to the
  /// sampled range.
  State at(double t) const;
  double t_last() const { return samples.empty() ? 0.0 : samples.back().t; }
};

class IntegrationBlowup : public std::runtime_error {
 public:
  IntegrationBlowup(std::size_t step, const std::string& what)
      : std::runtime_error("integration failed at step " + std::to_string(step) +
                           ": " + what),
        step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Stride that keeps at most `max_samples` samples for the given horizon.
std::size_t default_stride(double t_end, double dt,
                           std::size_t max_samples = 200000);

Trajectory integrate(const ModelParams& params, const State& initial,
                     const IntegrationSettings& settings);

}  // namespace spikesim
