#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spikesim/jump.hpp"
#include "spikesim/model.hpp"

namespace spikesim {

enum class DriftMode { MeanFieldFrozen, OneUnit };

std::string to_string(DriftMode mode);

/// f(x, y) = (Gamma + 1) x + y with x = kr / Gamma, y = kn.
double lyapunov_f(const LatticeState& s, double gamma);

/// Closed-form generator drift of f. `anchor` is only read in mean-field mode.
double drift(DriftMode mode, const ModelParams& params, const State& anchor,
             const LatticeState& s);

/// Sum over channels of rate * (f(s + l) - f(s)), using the process's own
/// (boundary-censored) rates.
double generator_drift(const ProcessSpec& spec, const LatticeState& s);

struct ErgodicityCheck {
  bool holds;
  double margin;
};

/// Sufficient condition only: `holds == false` is inconclusive.
///   mean-field: Gamma/beta + r*/2 > 1
///   one-unit:   Gamma >= beta
ErgodicityCheck ergodicity_condition(DriftMode mode, const ModelParams& params);

/// Left side of the A inequality; A = {lhs <= (Gamma + 1) p + Gamma eps}.
double set_A_lhs(DriftMode mode, const ModelParams& params, const State& anchor,
                 const LatticeState& s);

struct ScanBox {
  std::int64_t kr_max = 0;
  std::int64_t kn_max = 0;
};

/// Members of A with this kn form the kr ranges [kr_min, kr_max].
struct ARow {
  std::int64_t kn;
  std::int64_t kr_min;
  std::int64_t kr_max;
};

struct DriftReport {
  DriftMode mode = DriftMode::OneUnit;
  double epsilon = 0.1;
  ErgodicityCheck condition{false, 0.0};
  bool inconclusive = false;
  ScanBox scan_box;
  std::vector<ARow> set_A;
  std::size_t set_A_size = 0;
  /// Largest kr and kn found in A.
  LatticeState set_A_extent;
  /// First violations found (capped); violation_count is the full count.
  std::vector<LatticeState> violations;
  std::size_t violation_count = 0;

  bool pass() const { return !inconclusive && violation_count == 0; }
  bool contains(const LatticeState& s) const;
};

class BoxTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Box of four times A's analytic extent along each axis. Throws BoxTooSmall
/// when A is unbounded.
ScanBox auto_scan_box(DriftMode mode, const ModelParams& params, const State& anchor,
                      double epsilon);

/// Enumerates every lattice state in [0, kr_max] x [0, kn_max], classifies it
/// against A and records states outside A whose drift exceeds -epsilon. In
/// mean-field mode the drift is checked both in closed form and with the
/// censored generator. Returns an inconclusive report without scanning when
/// the ergodicity condition fails.
DriftReport scan_set_A(DriftMode mode, const ModelParams& params,
                       std::optional<State> anchor, double epsilon = 0.1,
                       std::optional<ScanBox> box = std::nullopt);

/// Number of jumps that move the path from outside A into A.
std::size_t count_entries(const JumpTrajectory& traj, const DriftReport& report);

}  // namespace spikesim
