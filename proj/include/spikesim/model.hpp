#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace spikesim {

/// Normalized rate-equation parameters. All four are dimensionless.
class ModelParams {
 public:
  ModelParams(double alpha, double beta, double gamma, double p);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double p() const { return p_; }
  /// beta * p + alpha, recomputed by every setter.
  double z() const { return z_; }

  ModelParams with_alpha(double v) const { return {v, beta_, gamma_, p_}; }
  ModelParams with_beta(double v) const { return {alpha_, v, gamma_, p_}; }
  ModelParams with_gamma(double v) const { return {alpha_, beta_, v, p_}; }
  ModelParams with_p(double v) const { return {alpha_, beta_, gamma_, v}; }

  bool operator==(const ModelParams&) const = default;

 private:
  double alpha_;
  double beta_;
  double gamma_;
  double p_;
  double z_;
};

/// Population inversion r and photon density n.
struct State {
  double r = 0.0;
  double n = 0.0;

  bool operator==(const State&) const = default;
};

/// Time derivative (dr/dt, dn/dt); same layout as State.
using Derivative = State;

enum class Regime { StableNode, StableFocus };

std::string to_string(Regime regime);

struct GammaBoundaries {
  std::optional<double> gamma0;
  std::optional<double> gamma1;
  std::optional<double> gamma2;
  std::optional<double> gamma_star;
  std::optional<double> delta_at_star;
};

struct StabilityReport {
  State fixed_point;
  std::pair<std::complex<double>, std::complex<double>> eigenvalues;
  double discriminant = 0.0;
  Regime regime = Regime::StableNode;
  GammaBoundaries boundaries;
};

class UndefinedStationaryPoint : public std::domain_error {
 public:
  UndefinedStationaryPoint()
      : std::domain_error("stationary point undefined: z = beta*p + alpha is 0") {}
};

Derivative vector_field(const ModelParams& params, const State& s);

/// r* = p(1+beta)/z, n* = beta p.
State stationary_point(const ModelParams& params);

double discriminant(const ModelParams& params);

/// Roots of the characteristic polynomial of the linearization at (r*, n*).
/// The first root carries the + branch (non-negative imaginary part).
std::pair<std::complex<double>, std::complex<double>> eigenvalues(
    const ModelParams& params);

/// Discriminant exactly 0 counts as a node.
Regime classify_regime(const ModelParams& params);

GammaBoundaries gamma_boundaries(const ModelParams& params);

StabilityReport analyze_stability(const ModelParams& params);

}  // namespace spikesim
