#include "spikesim/io.hpp"

#include <charconv>
#include <ostream>

namespace spikesim {

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json complex_json(const std::complex<double>& c) {
  return {{"re", c.real()}, {"im", c.imag()}};
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Metadata params_metadata(const ModelParams& params) {
  return {{"alpha", format_number(params.alpha())},
          {"beta", format_number(params.beta())},
          {"gamma", format_number(params.gamma())},
          {"p", format_number(params.p())}};
}

void write_metadata(std::ostream& out, const Metadata& meta) {
  out << "# spikesim " << kToolVersion << '\n';
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const Metadata& meta) {
  write_metadata(out, meta);
  out << "t,r,n\n";
  for (const TimedState& s : traj.samples) {
    out << format_number(s.t) << ',' << format_number(s.state.r) << ','
        << format_number(s.state.n) << '\n';
  }
}

void write_jump_csv(std::ostream& out, const JumpTrajectory& traj, const Metadata& meta) {
  write_metadata(out, meta);
  out << "t,r,n,channel\n";
  const State s0 = traj.lattice.physical(traj.initial);
  out << "0," << format_number(s0.r) << ',' << format_number(s0.n) << ",initial\n";
  for (const JumpEvent& e : traj.events) {
    const State s = traj.lattice.physical(e.state);
    out << format_number(e.t) << ',' << format_number(s.r) << ',' << format_number(s.n)
        << ',' << to_string(e.channel) << '\n';
  }
}

void write_pairs_csv(std::ostream& out, std::span<const PlateauSpikePair> pairs,
                     const Metadata& meta) {
  write_metadata(out, meta);
  out << "plateau_length,amplitude\n";
  for (const auto& p : pairs)
    out << format_number(p.length) << ',' << format_number(p.amplitude) << '\n';
}

void write_survival_csv(std::ostream& out, const SurvivalCurve& curve, const Metadata& meta) {
  write_metadata(out, meta);
  out << "a,survival\n";
  for (std::size_t i = 0; i < curve.grid().size(); ++i)
    out << format_number(curve.grid()[i]) << ',' << format_number(curve.survival()[i]) << '\n';
}

nlohmann::json to_json(const ModelParams& params) {
  return {{"alpha", params.alpha()},
          {"beta", params.beta()},
          {"gamma", params.gamma()},
          {"p", params.p()},
          {"z", params.z()}};
}

nlohmann::json to_json(const State& s) { return {{"r", s.r}, {"n", s.n}}; }

nlohmann::json to_json(const LatticeState& s) { return {{"kr", s.kr}, {"kn", s.kn}}; }

nlohmann::json to_json(const StabilityReport& report) {
  const GammaBoundaries& b = report.boundaries;
  return {{"fixed_point", to_json(report.fixed_point)},
          {"eigenvalues",
           {complex_json(report.eigenvalues.first), complex_json(report.eigenvalues.second)}},
          {"discriminant", report.discriminant},
          {"regime", to_string(report.regime)},
          {"gamma0", optional_number(b.gamma0)},
          {"gamma1", optional_number(b.gamma1)},
          {"gamma2", optional_number(b.gamma2)},
          {"gamma_star", optional_number(b.gamma_star)},
          {"delta_at_star", optional_number(b.delta_at_star)}};
}

nlohmann::json to_json(const DriftReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ARow& row : report.set_A)
    rows.push_back({{"kn", row.kn}, {"kr_min", row.kr_min}, {"kr_max", row.kr_max}});
  nlohmann::json violations = nlohmann::json::array();
  for (const LatticeState& s : report.violations) violations.push_back(to_json(s));
  return {{"mode", to_string(report.mode)},
          {"epsilon", report.epsilon},
          {"condition_holds", report.condition.holds},
          {"condition_margin", report.condition.margin},
          {"inconclusive", report.inconclusive},
          {"pass", report.pass()},
          {"scan_box", {{"kr_max", report.scan_box.kr_max}, {"kn_max", report.scan_box.kn_max}}},
          {"set_A", rows},
          {"set_A_size", report.set_A_size},
          {"set_A_extent", to_json(report.set_A_extent)},
          {"violations", violations},
          {"violation_count", report.violation_count}};
}

nlohmann::json to_json(const TailFit& fit) {
  return {{"a0", fit.a0},
          {"lambda_hat", fit.lambda_hat},
          {"r_squared", optional_number(fit.r_squared)},
          {"n_spikes", fit.n_spikes}};
}

nlohmann::json to_json(const Correlation& corr) {
  return {{"pearson", optional_number(corr.pearson)},
          {"spearman", optional_number(corr.spearman)},
          {"n", corr.n}};
}

nlohmann::json to_json(const SpikeRecord& spike) {
  return {{"t_peak", spike.t_peak},
          {"amplitude", spike.amplitude},
          {"t_start", spike.t_start},
          {"t_end", spike.t_end}};
}

nlohmann::json to_json(const PlateauRecord& plateau) {
  return {{"t_start", plateau.t_start},
          {"t_end", plateau.t_end},
          {"length", plateau.length},
          {"threshold", plateau.threshold}};
}

}  // namespace spikesim
