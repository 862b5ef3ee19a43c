#include "spikesim/lyapunov.hpp"

#include <algorithm>
#include <cmath>

namespace spikesim {

namespace {

constexpr std::size_t kMaxStoredViolations = 1000;

ProcessSpec process_for(DriftMode mode, const ModelParams& params, const State& anchor) {
  return mode == DriftMode::OneUnit ? build_oneunit(params)
                                    : build_meanfield(params, anchor);
}

double threshold(const ModelParams& params, double epsilon) {
  return (params.gamma() + 1.0) * params.p() + params.gamma() * epsilon;
}

// Coefficients of the A inequality along the axes: lhs(x, 0) = cx * x and
// lhs(0, y) = cy * y in both modes.
std::pair<double, double> axis_coefficients(DriftMode mode, const ModelParams& params,
                                            const State& anchor) {
  const double cy0 = params.gamma() / params.beta() - 1.0;
  if (mode == DriftMode::OneUnit) return {params.alpha(), cy0};
  return {0.5 * anchor.n + params.alpha(), cy0 + 0.5 * anchor.r};
}

}  // namespace

std::string to_string(DriftMode mode) {
  return mode == DriftMode::OneUnit ? "oneunit" : "meanfield";
}

double lyapunov_f(const LatticeState& s, double gamma) {
  return (gamma + 1.0) * (static_cast<double>(s.kr) / gamma) + static_cast<double>(s.kn);
}

double set_A_lhs(DriftMode mode, const ModelParams& params, const State& anchor,
                 const LatticeState& s) {
  const double g = params.gamma();
  const double x = static_cast<double>(s.kr) / g;
  const double y = static_cast<double>(s.kn);
  const double cy = g / params.beta() - 1.0;
  if (mode == DriftMode::OneUnit) return x * y + params.alpha() * x + cy * y;
  return 0.5 * (x * anchor.n + y * anchor.r) + params.alpha() * x + cy * y;
}

double drift(DriftMode mode, const ModelParams& params, const State& anchor,
             const LatticeState& s) {
  const double g = params.gamma();
  const double x = static_cast<double>(s.kr) / g;
  const double y = static_cast<double>(s.kn);
  const double source = (g + 1.0) / g * params.p();
  if (mode == DriftMode::OneUnit) {
    return -(x * y + params.alpha() * x + (g / params.beta() - 1.0) * y) / g + source;
  }
  return -(x * (0.5 * anchor.n + params.alpha()) +
           y * (g / params.beta() + 0.5 * anchor.r - 1.0)) /
             g +
         source;
}

double generator_drift(const ProcessSpec& spec, const LatticeState& s) {
  const Rates rates = spec.rates(s);
  const double g = spec.params().gamma();
  double out = 0.0;
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    // f is linear with f(0) = 0, so f(s + l) - f(s) = f(l) exactly; the
    // literal difference cancels badly once f(s) is ~1e7.
    const LatticeState step{kChannels[i].dkr, kChannels[i].dkn};
    out += rates[i] * lyapunov_f(step, g);
  }
  return out;
}

ErgodicityCheck ergodicity_condition(DriftMode mode, const ModelParams& params) {
  if (mode == DriftMode::OneUnit) {
    const double margin = params.gamma() - params.beta();
    return {margin >= 0.0, margin};
  }
  const State fixed = stationary_point(params);
  const double margin = params.gamma() / params.beta() + 0.5 * fixed.r - 1.0;
  return {margin > 0.0, margin};
}

bool DriftReport::contains(const LatticeState& s) const {
  auto it = std::lower_bound(set_A.begin(), set_A.end(), s.kn,
                             [](const ARow& row, std::int64_t kn) { return row.kn < kn; });
  for (; it != set_A.end() && it->kn == s.kn; ++it) {
    if (s.kr >= it->kr_min && s.kr <= it->kr_max) return true;
  }
  return false;
}

ScanBox auto_scan_box(DriftMode mode, const ModelParams& params, const State& anchor,
                      double epsilon) {
  const auto [cx, cy] = axis_coefficients(mode, params, anchor);
  if (!(cx > 0.0) || !(cy > 0.0))
    throw BoxTooSmall("set A is unbounded along an axis; no finite box contains it");
  const double c = threshold(params, epsilon);
  const double x_ext = std::max(c, 0.0) / cx;
  const double y_ext = std::max(c, 0.0) / cy;
  // Always leave a few lattice cells beyond A.
  const auto kr_max = static_cast<std::int64_t>(std::ceil(4.0 * x_ext * params.gamma())) + 4;
  const auto kn_max = static_cast<std::int64_t>(std::ceil(4.0 * y_ext)) + 4;
  return {kr_max, kn_max};
}

DriftReport scan_set_A(DriftMode mode, const ModelParams& params,
                       std::optional<State> anchor_opt, double epsilon,
                       std::optional<ScanBox> box) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const State anchor = mode == DriftMode::MeanFieldFrozen
                           ? anchor_opt.value_or(stationary_point(params))
                           : State{};

  DriftReport report;
  report.mode = mode;
  report.epsilon = epsilon;
  report.condition = ergodicity_condition(mode, params);
  if (!report.condition.holds) {
    report.inconclusive = true;
    return report;
  }
  report.scan_box = box ? *box : auto_scan_box(mode, params, anchor, epsilon);
  if (report.scan_box.kr_max < 1 || report.scan_box.kn_max < 1)
    throw std::invalid_argument("scan box must extend at least one cell per axis");

  const ProcessSpec spec = process_for(mode, params, anchor);
  const double c = threshold(params, epsilon);
  const double g = params.gamma();
  const double source = (g + 1.0) / g * params.p();
  const double cy = g / params.beta() - 1.0;
  const double alpha = params.alpha();

  auto record_violation = [&](std::int64_t kr, std::int64_t kn) {
    if (report.violations.size() < kMaxStoredViolations) report.violations.push_back({kr, kn});
    ++report.violation_count;
  };

  for (std::int64_t kn = 0; kn <= report.scan_box.kn_max; ++kn) {
    const double y = static_cast<double>(kn);

    // Generator drift is affine in kr for kr >= 1 (every rate is affine in x
    // and censoring only acts at kr = 0). Offset and slope come from the
    // process itself at the row ends and are re-checked at the midpoint.
    const std::int64_t kr_last = std::max<std::int64_t>(report.scan_box.kr_max, 2);
    const double gd1 = generator_drift(spec, {1, kn});
    const double gd_last = generator_drift(spec, {kr_last, kn});
    const double gd_slope = (gd_last - gd1) / static_cast<double>(kr_last - 1);
    const std::int64_t kr_mid = (1 + kr_last) / 2;
    const double mid_direct = generator_drift(spec, {kr_mid, kn});
    const double mid_affine = gd1 + static_cast<double>(kr_mid - 1) * gd_slope;
    const double scale = std::max({1.0, std::abs(gd1), std::abs(gd_last)});
    if (std::abs(mid_direct - mid_affine) > 1e-9 * scale)
      throw std::logic_error("generator drift is not affine along kr");

    // lhs(x, y) = x * (y_term) + y * cy_term, x = kr / Gamma.
    const double x_coef = mode == DriftMode::OneUnit ? y + alpha : 0.5 * anchor.n + alpha;
    const double y_part = mode == DriftMode::OneUnit ? cy * y : (0.5 * anchor.r + cy) * y;

    bool in_run = false;
    std::int64_t run_start = 0;
    for (std::int64_t kr = 0; kr <= report.scan_box.kr_max; ++kr) {
      const double x = static_cast<double>(kr) / g;
      const double lhs = x * x_coef + y_part;
      const bool member = lhs <= c;
      if (member) {
        if (!in_run) {
          in_run = true;
          run_start = kr;
        }
        ++report.set_A_size;
        report.set_A_extent.kr = std::max(report.set_A_extent.kr, kr);
        report.set_A_extent.kn = std::max(report.set_A_extent.kn, kn);
        continue;
      }
      if (in_run) {
        report.set_A.push_back({kn, run_start, kr - 1});
        in_run = false;
      }
      const double closed = -lhs / g + source;
      const double gen = kr == 0 ? generator_drift(spec, {0, kn})
                                 : gd1 + static_cast<double>(kr - 1) * gd_slope;
      if (closed > -epsilon || gen > -epsilon) record_violation(kr, kn);
    }
    if (in_run) report.set_A.push_back({kn, run_start, report.scan_box.kr_max});
  }

  if (report.set_A_size > 0 && (report.set_A_extent.kr >= report.scan_box.kr_max ||
                                report.set_A_extent.kn >= report.scan_box.kn_max)) {
    throw BoxTooSmall("set A reaches the scan box edge (kr_max=" +
                      std::to_string(report.scan_box.kr_max) +
                      ", kn_max=" + std::to_string(report.scan_box.kn_max) + ")");
  }
  return report;
}

std::size_t count_entries(const JumpTrajectory& traj, const DriftReport& report) {
  std::size_t entries = 0;
  bool inside = report.contains(traj.initial);
  for (const JumpEvent& e : traj.events) {
    const bool now = report.contains(e.state);
    if (now && !inside) ++entries;
    inside = now;
  }
  return entries;
}

}  // namespace spikesim
