#include "spikesim/ode.hpp"

#include <algorithm>
#include <cmath>

namespace spikesim {

namespace {

constexpr double kClampTolerance = 1e-9;

State axpy(const State& x, double h, const Derivative& k) {
  return {x.r + h * k.r, x.n + h * k.n};
}

}  // namespace

State Trajectory::at(double t) const {
  if (samples.empty()) throw std::logic_error("empty trajectory");
  if (t <= samples.front().t) return samples.front().state;
  if (t >= samples.back().t) return samples.back().state;
  auto hi = std::upper_bound(
      samples.begin(), samples.end(), t,
      [](double value, const TimedState& s) { return value < s.t; });
  auto lo = hi - 1;
  const double w = (t - lo->t) / (hi->t - lo->t);
  return {lo->state.r + w * (hi->state.r - lo->state.r),
          lo->state.n + w * (hi->state.n - lo->state.n)};
}

std::size_t default_stride(double t_end, double dt, std::size_t max_samples) {
  const double steps = std::ceil(t_end / dt - 1e-9);
  const auto stride = static_cast<std::size_t>(
      std::ceil(steps / static_cast<double>(max_samples)));
  return std::max<std::size_t>(1, stride);
}

Trajectory integrate(const ModelParams& params, const State& initial,
                     const IntegrationSettings& settings) {
  if (!(settings.t_end > 0.0)) throw std::invalid_argument("t_end must be > 0");
  if (!(settings.dt > 0.0) || settings.dt > settings.t_end)
    throw std::invalid_argument("dt must satisfy 0 < dt <= t_end");
  if (settings.sample_every < 1)
    throw std::invalid_argument("sample_every must be >= 1");
  if (initial.r < 0.0 || initial.n < 0.0)
    throw std::invalid_argument("initial state must be non-negative");

  Trajectory traj{params, initial, settings, {}, 0};
  const auto steps =
      static_cast<std::size_t>(std::ceil(settings.t_end / settings.dt - 1e-9));
  traj.samples.reserve(steps / settings.sample_every + 2);
  traj.samples.push_back({0.0, initial});

  State x = initial;
  for (std::size_t step = 1; step <= steps; ++step) {
    // Sample times come from the step index, not accumulated additions; the
    // final step is shortened to land on t_end.
    const double t_prev = static_cast<double>(step - 1) * settings.dt;
    const double t = step == steps ? settings.t_end
                                   : static_cast<double>(step) * settings.dt;
    const double h = t - t_prev;
    const Derivative k1 = vector_field(params, x);
    const Derivative k2 = vector_field(params, axpy(x, 0.5 * h, k1));
    const Derivative k3 = vector_field(params, axpy(x, 0.5 * h, k2));
    const Derivative k4 = vector_field(params, axpy(x, h, k3));
    x.r += h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
    x.n += h / 6.0 * (k1.n + 2.0 * k2.n + 2.0 * k3.n + k4.n);

    if (!std::isfinite(x.r) || !std::isfinite(x.n))
      throw IntegrationBlowup(step, "non-finite state");
    bool clamped = false;
    for (double* v : {&x.r, &x.n}) {
      if (*v >= 0.0) continue;
      if (*v < -kClampTolerance)
        throw IntegrationBlowup(step, "negative component beyond -1e-9");
      *v = 0.0;
      clamped = true;
    }
    if (clamped) ++traj.clamp_count;

    if (step % settings.sample_every == 0 || step == steps)
      traj.samples.push_back({t, x});
  }
  return traj;
}

}  // namespace spikesim
