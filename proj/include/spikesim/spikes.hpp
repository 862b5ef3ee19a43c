#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spikesim/jump.hpp"
#include "spikesim/ode.hpp"

namespace spikesim {

enum class PathKind {
  PiecewiseConstant,  // value i holds on [t_i, t_{i+1})
  PiecewiseLinear,    // straight lines between samples
};

/// Scalar time series observed on [t.front(), t_end].
struct Series {
  std::vector<double> t;
  std::vector<double> v;
  double t_end = 0.0;
  PathKind kind = PathKind::PiecewiseConstant;
};

/// Photon density of a jump path in physical units (initial state at t = 0).
Series photon_series(const JumpTrajectory& traj);
/// Photon density of an ODE solution.
Series photon_series(const Trajectory& traj);

struct SpikeRecord {
  double t_peak;
  double amplitude;
  double t_start;  // first sample above a0
  double t_end;    // first sample back at or below a0
};

/// One record per maximal run of samples above a0. Runs still open at either
/// end of the series are dropped since their peak is not observed.
std::vector<SpikeRecord> detect_spikes(const Series& series, double a0);

std::vector<double> amplitudes(std::span<const SpikeRecord> spikes);

/// Empirical P(A > a | A > a0) as a right-continuous step function. Amplitudes
/// at or below a0 are ignored.
class SurvivalCurve {
 public:
  SurvivalCurve(std::span<const double> sample, double a0);

  double a0() const { return a0_; }
  std::size_t size() const { return sorted_.size(); }
  double at(double a) const;
  /// a0 followed by each distinct amplitude, with the survival at each.
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& survival() const { return survival_; }

 private:
  double a0_;
  std::vector<double> sorted_;
  std::vector<double> grid_;
  std::vector<double> survival_;
};

SurvivalCurve tail_survival(std::span<const double> sample, double a0);

struct TailFit {
  double a0;
  double lambda_hat;
  std::optional<double> r_squared;
  std::size_t n_spikes;
};

/// Shifted-exponential MLE 1 / mean(A - a0), plus the r^2 of a least-squares
/// line through log survival on the grid (points with survival 0 dropped).
TailFit fit_exponential(std::span<const double> sample, double a0);

struct PlateauRecord {
  double t_start;
  double t_end;
  double length;
  double threshold;
};

/// Maximal intervals with value <= thr. Intervals shorter than min_length are
/// discarded; plateaus touching either end of the series are kept.
std::vector<PlateauRecord> detect_plateaus(const Series& series, double thr,
                                           double min_length = 0.0);

struct PlateauSpikePair {
  double length;
  double amplitude;
};

/// Each plateau is matched with the first spike starting at or after its end;
/// when several plateaus share a spike only the latest is kept.
std::vector<PlateauSpikePair> pair_plateau_spike(std::span<const PlateauRecord> plateaus,
                                                 std::span<const SpikeRecord> spikes);

struct Correlation {
  std::optional<double> pearson;
  std::optional<double> spearman;
  std::size_t n;
};

class InsufficientData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pearson and Spearman (average ranks on ties); absent on zero variance.
Correlation correlation(std::span<const PlateauSpikePair> pairs);

class CoverageGap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// sup over [0, t] of max(|r_N - r|, |n_N - n|) between the piecewise-constant
/// jump path and the piecewise-linear ODE path.
double lln_sup_distance(const JumpTrajectory& jump, const Trajectory& ode, double t);

}  // namespace spikesim
