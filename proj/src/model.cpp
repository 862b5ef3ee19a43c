#include "spikesim/model.hpp"

#include <cmath>

namespace spikesim {

namespace {

void require_z(const ModelParams& params) {
  if (!(params.z() > 0.0)) throw UndefinedStationaryPoint();
}

// Sum of the linearization's damping terms: z/Gamma + alpha(1+beta)/(z beta).
double trace_term(const ModelParams& params) {
  const double z = params.z();
  return z / params.gamma() +
         params.alpha() * (1.0 + params.beta()) / (z * params.beta());
}

}  // namespace

ModelParams::ModelParams(double alpha, double beta, double gamma, double p)
    : alpha_(alpha), beta_(beta), gamma_(gamma), p_(p), z_(beta * p + alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw std::invalid_argument("alpha must be finite and >= 0");
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::invalid_argument("beta must be finite and > 0");
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw std::invalid_argument("gamma must be finite and > 0");
  if (!std::isfinite(p) || p < 0.0)
    throw std::invalid_argument("p must be finite and >= 0");
}

std::string to_string(Regime regime) {
  return regime == Regime::StableNode ? "StableNode" : "StableFocus";
}

Derivative vector_field(const ModelParams& params, const State& s) {
  const double a = params.alpha();
  const double dr = ((-a * s.r - s.n * s.r + s.n) + params.p()) / params.gamma();
  const double dn = (a * s.r + s.n * s.r - s.n) - s.n / params.beta();
  return {dr, dn};
}

State stationary_point(const ModelParams& params) {
  require_z(params);
  const double p = params.p();
  return {p * (1.0 + params.beta()) / params.z(), params.beta() * p};
}

double discriminant(const ModelParams& params) {
  require_z(params);
  const double half = 0.5 * trace_term(params);
  return half * half - params.z() / (params.gamma() * params.beta());
}

std::pair<std::complex<double>, std::complex<double>> eigenvalues(
    const ModelParams& params) {
  const double delta = discriminant(params);
  const double center = -0.5 * trace_term(params);
  if (delta >= 0.0) {
    const double root = std::sqrt(delta);
    return {{center + root, 0.0}, {center - root, 0.0}};
  }
  const double freq = std::sqrt(-delta);
  return {{center, freq}, {center, -freq}};
}

Regime classify_regime(const ModelParams& params) {
  return discriminant(params) >= 0.0 ? Regime::StableNode : Regime::StableFocus;
}

GammaBoundaries gamma_boundaries(const ModelParams& params) {
  require_z(params);
  const double a = params.alpha();
  const double b = params.beta();
  const double p = params.p();
  const double z = params.z();
  GammaBoundaries out;

  if (a == 0.0) {
    out.gamma0 = b * b * p / 4.0;
    out.gamma_star = b * b * p / 2.0;
    out.delta_at_star = -1.0 / (b * b);
    return out;
  }
  if (a >= p) return out;

  // Delta = 0 is a quadratic in u = 1/Gamma. With c = alpha(1+beta)/(z beta),
  // s = 2/beta - c and d = 2 sqrt((1/beta)(1/beta - c)) the roots are
  // u = (s +- d)/z, and (s + d)(s - d) = c^2. Using the product avoids the
  // cancellation in s - d as alpha -> 0.
  const double c = a * (1.0 + b) / (z * b);
  const double s = 2.0 / b - c;
  const double d = 2.0 * std::sqrt((1.0 / b) * (1.0 / b - c));
  out.gamma1 = z / (s + d);
  out.gamma2 = z * (s + d) / (c * c);
  out.gamma_star = b * z * z / (2.0 * b * p + a * (1.0 - b));
  out.delta_at_star = -(p - a) / (z * b);
  return out;
}

StabilityReport analyze_stability(const ModelParams& params) {
  StabilityReport report;
  report.fixed_point = stationary_point(params);
  report.eigenvalues = eigenvalues(params);
  report.discriminant = discriminant(params);
  report.regime = report.discriminant >= 0.0 ? Regime::StableNode
                                             : Regime::StableFocus;
  report.boundaries = gamma_boundaries(params);
  return report;
}

}  // namespace spikesim
