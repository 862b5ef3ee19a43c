#include "spikesim/spikes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace spikesim {

namespace {

std::optional<double> pearson_of(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

Series photon_series(const JumpTrajectory& traj) {
  Series s;
  s.kind = PathKind::PiecewiseConstant;
  s.t.reserve(traj.events.size() + 1);
  s.v.reserve(traj.events.size() + 1);
  s.t.push_back(0.0);
  s.v.push_back(traj.lattice.n(traj.initial.kn));
  for (const JumpEvent& e : traj.events) {
    s.t.push_back(e.t);
    s.v.push_back(traj.lattice.n(e.state.kn));
  }
  s.t_end = std::isfinite(traj.observed_until) ? traj.observed_until : s.t.back();
  return s;
}

Series photon_series(const Trajectory& traj) {
  Series s;
  s.kind = PathKind::PiecewiseLinear;
  for (const TimedState& ts : traj.samples) {
    s.t.push_back(ts.t);
    s.v.push_back(ts.state.n);
  }
  s.t_end = traj.t_last();
  return s;
}

std::vector<SpikeRecord> detect_spikes(const Series& series, double a0) {
  if (!(a0 > 0.0)) throw std::invalid_argument("a0 must be > 0");
  std::vector<SpikeRecord> out;
  const std::size_t n = series.v.size();
  std::size_t i = 0;
  while (i < n) {
    if (series.v[i] <= a0) {
      ++i;
      continue;
    }
    std::size_t peak = i;
    std::size_t j = i;
    while (j < n && series.v[j] > a0) {
      if (series.v[j] > series.v[peak]) peak = j;
      ++j;
    }
    if (i > 0 && j < n)
      out.push_back({series.t[peak], series.v[peak], series.t[i], series.t[j]});
    i = j;
  }
  return out;
}

std::vector<double> amplitudes(std::span<const SpikeRecord> spikes) {
  std::vector<double> out;
  out.reserve(spikes.size());
  for (const SpikeRecord& s : spikes) out.push_back(s.amplitude);
  return out;
}

SurvivalCurve::SurvivalCurve(std::span<const double> sample, double a0) : a0_(a0) {
  for (double a : sample)
    if (a > a0) sorted_.push_back(a);
  if (sorted_.empty())
    throw InsufficientData("no amplitude above the threshold a0");
  std::sort(sorted_.begin(), sorted_.end());
  grid_.push_back(a0);
  survival_.push_back(1.0);
  const auto total = static_cast<double>(sorted_.size());
  for (std::size_t i = 0; i < sorted_.size();) {
    std::size_t j = i;
    while (j < sorted_.size() && sorted_[j] == sorted_[i]) ++j;
    grid_.push_back(sorted_[i]);
    survival_.push_back(static_cast<double>(sorted_.size() - j) / total);
    i = j;
  }
}

double SurvivalCurve::at(double a) const {
  if (a < a0_) return 1.0;
  const auto above = sorted_.end() - std::upper_bound(sorted_.begin(), sorted_.end(), a);
  return static_cast<double>(above) / static_cast<double>(sorted_.size());
}

SurvivalCurve tail_survival(std::span<const double> sample, double a0) {
  return SurvivalCurve(sample, a0);
}

TailFit fit_exponential(std::span<const double> sample, double a0) {
  const SurvivalCurve curve(sample, a0);
  if (curve.size() < 2)
    throw InsufficientData("exponential fit needs at least two amplitudes above a0");

  double excess = 0.0;
  for (double a : sample)
    if (a > a0) excess += a - a0;
  TailFit fit{a0, static_cast<double>(curve.size()) / excess, std::nullopt, curve.size()};

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < curve.grid().size(); ++i) {
    if (curve.survival()[i] <= 0.0) continue;
    xs.push_back(curve.grid()[i]);
    ys.push_back(std::log(curve.survival()[i]));
  }
  if (xs.size() >= 2) {
    if (const auto r = pearson_of(xs, ys)) fit.r_squared = (*r) * (*r);
  }
  return fit;
}

std::vector<PlateauRecord> detect_plateaus(const Series& series, double thr,
                                           double min_length) {
  if (!(thr >= 0.0)) throw std::invalid_argument("thr must be >= 0");
  std::vector<PlateauRecord> out;
  const std::size_t n = series.v.size();
  if (n == 0) return out;

  auto emit = [&](double start, double end) {
    const double length = end - start;
    if (length > 0.0 && length >= min_length) out.push_back({start, end, length, thr});
  };

  if (series.kind == PathKind::PiecewiseConstant) {
    std::optional<double> start;
    for (std::size_t i = 0; i < n; ++i) {
      const bool low = series.v[i] <= thr;
      if (low && !start) start = series.t[i];
      if (!low && start) {
        emit(*start, series.t[i]);
        start.reset();
      }
    }
    if (start) emit(*start, series.t_end);
    return out;
  }

  // Piecewise linear: locate threshold crossings inside each segment.
  std::optional<double> start;
  if (series.v[0] <= thr) start = series.t[0];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double v0 = series.v[i];
    const double v1 = series.v[i + 1];
    const double t0 = series.t[i];
    const double t1 = series.t[i + 1];
    const auto crossing = [&] { return t0 + (thr - v0) / (v1 - v0) * (t1 - t0); };
    if (start && v1 > thr) {
      emit(*start, crossing());
      start.reset();
    } else if (!start && v1 <= thr) {
      start = crossing();
    }
  }
  if (start) emit(*start, series.t_end);
  return out;
}

std::vector<PlateauSpikePair> pair_plateau_spike(std::span<const PlateauRecord> plateaus,
                                                 std::span<const SpikeRecord> spikes) {
  // spike index -> latest plateau ending before it
  std::map<std::size_t, const PlateauRecord*> chosen;
  for (const PlateauRecord& p : plateaus) {
    auto it = std::lower_bound(
        spikes.begin(), spikes.end(), p.t_end,
        [](const SpikeRecord& s, double t) { return s.t_start < t; });
    if (it == spikes.end()) continue;
    const auto k = static_cast<std::size_t>(it - spikes.begin());
    auto [slot, inserted] = chosen.try_emplace(k, &p);
    if (!inserted && p.t_end > slot->second->t_end) slot->second = &p;
  }
  std::vector<PlateauSpikePair> out;
  out.reserve(chosen.size());
  for (const auto& [k, p] : chosen) out.push_back({p->length, spikes[k].amplitude});
  return out;
}

Correlation correlation(std::span<const PlateauSpikePair> pairs) {
  if (pairs.size() < 3) throw InsufficientData("correlation needs at least 3 pairs");
  std::vector<double> x, y;
  x.reserve(pairs.size());
  y.reserve(pairs.size());
  for (const auto& p : pairs) {
    x.push_back(p.length);
    y.push_back(p.amplitude);
  }
  Correlation out;
  out.n = pairs.size();
  out.pearson = pearson_of(x, y);
  out.spearman = pearson_of(average_ranks(x), average_ranks(y));
  return out;
}

double lln_sup_distance(const JumpTrajectory& jump, const Trajectory& ode, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
  constexpr double kSlack = 1e-9;
  if (jump.observed_until < t - kSlack)
    throw CoverageGap("jump trajectory does not cover the horizon");
  if (ode.samples.empty() || ode.samples.front().t > kSlack || ode.t_last() < t - kSlack)
    throw CoverageGap("ODE trajectory does not cover the horizon");

  // The difference is linear between consecutive breakpoints, so the sup is
  // reached at a breakpoint, either at the jump value or its left limit.
  std::vector<double> times{0.0, t};
  for (const JumpEvent& e : jump.events) {
    if (e.t > t) break;
    times.push_back(e.t);
  }
  for (const TimedState& s : ode.samples) {
    if (s.t > t) break;
    times.push_back(s.t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  auto distance = [&](const LatticeState& k, const State& x) {
    const State y = jump.lattice.physical(k);
    return std::max(std::abs(y.r - x.r), std::abs(y.n - x.n));
  };

  double sup = 0.0;
  auto ev = jump.events.begin();
  LatticeState before = jump.initial;
  for (double tau : times) {
    const State x = ode.at(tau);
    sup = std::max(sup, distance(before, x));
    LatticeState now = before;
    while (ev != jump.events.end() && ev->t <= tau) now = (ev++)->state;
    sup = std::max(sup, distance(now, x));
    before = now;
  }
  return sup;
}

}  // namespace spikesim
