#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "shiftfem/errors.hpp"

namespace shiftfem {

using ScalarFn = std::function<double(double)>;

/// Coefficient data of the shifted convection-diffusion problem
///
///   -eps u''(x) - b(x) u'(x) + c(x) u(x) + dshift(x) u(x-1) = f(x)  on (0,2),
///   u = phi on [-1,0],  u(2) = 0,
///
/// with b >= beta > 0 and c - b'/2 - sup_{(1,2)}|dshift|/2 >= gamma > 0.
/// `dshift` is the literal multiplier of u(x-1) on the left-hand side; only
/// its magnitude enters the coercivity assumption.
struct ProblemSpec {
  double epsilon = 1e-6;
  ScalarFn b;
  ScalarFn b_prime;  ///< derivative of b, supplied by the caller
  ScalarFn c;
  ScalarFn dshift;
  ScalarFn f;
  ScalarFn phi;  ///< history on [-1,0] with phi(0) = 0
  double beta = 0.0;
  double gamma = 0.0;

  // optional closed-form solution (manufactured problems)
  ScalarFn exact;
  ScalarFn exact_prime;
  bool has_exact() const { return static_cast<bool>(exact); }
};

struct ValidationReport {
  double min_b = 0.0;           ///< sampled minimum of b over [0,2]
  double gamma_estimate = 0.0;  ///< sampled minimum of c - b'/2 - sup|dshift|/2
  double phi_at_zero = 0.0;
  bool passed = false;
  std::string message;  ///< names the first violated assumption
};

namespace detail {

inline double sampled_gamma(const ProblemSpec& spec, int samples) {
  double sup_d = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = 1.0 + static_cast<double>(i) / (samples - 1);
    sup_d = std::max(sup_d, std::abs(spec.dshift(x)));
  }
  double min_cb = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double x = 2.0 * static_cast<double>(i) / (samples - 1);
    min_cb = std::min(min_cb, spec.c(x) - 0.5 * spec.b_prime(x));
  }
  return min_cb - 0.5 * sup_d;
}

}  // namespace detail

/// Checks the coefficient assumptions by dense sampling (the coefficients are
/// black boxes). Does not throw; inspect `passed`.
inline ValidationReport validate(const ProblemSpec& spec, int samples = 100000) {
  if (!spec.b || !spec.b_prime || !spec.c || !spec.dshift || !spec.phi)
    throw std::invalid_argument("validate: spec is missing coefficient functions");
  ValidationReport report;
  report.min_b = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double x = 2.0 * static_cast<double>(i) / (samples - 1);
    report.min_b = std::min(report.min_b, spec.b(x));
  }
  report.gamma_estimate = detail::sampled_gamma(spec, samples);
  report.phi_at_zero = spec.phi(0.0);

  const double tol = 1e-12;
  if (!(report.min_b > 0.0) || report.min_b + tol < spec.beta)
    report.message = "b(x) >= beta > 0 violated";
  else if (!(report.gamma_estimate > 0.0))
    report.message = "c - b'/2 - sup|dshift|/2 > 0 violated";
  else if (std::abs(report.phi_at_zero) > tol)
    report.message = "phi(0) = 0 violated";
  else {
    report.passed = true;
    report.message = "ok";
  }
  return report;
}

/// Throwing variant of validate().
inline void require_valid(const ProblemSpec& spec) {
  const ValidationReport report = validate(spec);
  if (!report.passed) throw AssumptionError("problem assumptions: " + report.message);
}

/// Sampled coercivity constant min(c - b'/2) - sup_{(1,2)}|dshift|/2.
inline double compute_gamma(const ProblemSpec& spec, int samples = 100000) {
  const double gamma = detail::sampled_gamma(spec, samples);
  if (!(gamma > 0.0))
    throw NonCoerciveError("compute_gamma: estimate " + std::to_string(gamma) +
                           " is not positive");
  return gamma;
}

/// Builds f so that `u` solves the problem described by the skeleton (method
/// of manufactured solutions). `u` must be evaluable on [-1,2] and vanish at
/// x = 0 and x = 2; its restriction to [-1,0] becomes the history phi.
inline ProblemSpec manufacture_rhs(ScalarFn u, ScalarFn u_prime, ScalarFn u_second,
                                   ProblemSpec skeleton) {
  if (!u || !u_prime || !u_second)
    throw std::invalid_argument("manufacture_rhs: u and its derivatives are required");
  if (!skeleton.b || !skeleton.b_prime || !skeleton.c || !skeleton.dshift)
    throw std::invalid_argument("manufacture_rhs: skeleton must provide b, b', c, dshift");
  if (std::abs(u(0.0)) > 1e-12 || std::abs(u(2.0)) > 1e-12)
    throw std::invalid_argument("manufacture_rhs: u must vanish at x = 0 and x = 2");

  ProblemSpec spec = std::move(skeleton);
  spec.phi = u;
  spec.f = [u, u_prime, u_second, eps = spec.epsilon, b = spec.b, c = spec.c,
            d = spec.dshift](double x) {
    return -eps * u_second(x) - b(x) * u_prime(x) + c(x) * u(x) + d(x) * u(x - 1.0);
  };
  spec.exact = u;
  spec.exact_prime = std::move(u_prime);
  return spec;
}

/// Named problem instances addressable from the command line.
///
///  - "paper-example": -eps u'' - (2+x) u' + (3+x) u + d(x) u(x-1) = 3 with
///    history x^2, where d = 1-x left of the shift point and 2+sin(4 pi x)
///    right of it, so dshift = d >= 0.
///  - "manufactured": smooth coefficients with the exact solution
///    u = x(2-x)e^{-x} and the matching right-hand side.
inline ProblemSpec registry_get(const std::string& name, double epsilon = 1e-6) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("registry_get: epsilon must be positive");
  if (name == "paper-example") {
    ProblemSpec spec;
    spec.epsilon = epsilon;
    spec.b = [](double x) { return 2.0 + x; };
    spec.b_prime = [](double) { return 1.0; };
    spec.c = [](double x) { return 3.0 + x; };
    spec.dshift = [](double x) {
      return x < 1.0 ? 1.0 - x : 2.0 + std::sin(4.0 * std::numbers::pi * x);
    };
    spec.f = [](double) { return 3.0; };
    spec.phi = [](double x) { return x * x; };
    spec.beta = 2.0;
    spec.gamma = 1.0;
    return spec;
  }
  if (name == "manufactured") {
    ProblemSpec skeleton;
    skeleton.epsilon = epsilon;
    skeleton.b = [](double x) { return 2.0 + x; };
    skeleton.b_prime = [](double) { return 1.0; };
    skeleton.c = [](double x) { return 3.0 + x; };
    skeleton.dshift = [](double) { return 1.0; };
    skeleton.beta = 2.0;
    skeleton.gamma = 2.0;
    auto u = [](double x) { return x * (2.0 - x) * std::exp(-x); };
    auto du = [](double x) { return (x * x - 4.0 * x + 2.0) * std::exp(-x); };
    auto d2u = [](double x) { return (-x * x + 6.0 * x - 6.0) * std::exp(-x); };
    return manufacture_rhs(u, du, d2u, std::move(skeleton));
  }
  throw std::invalid_argument("registry_get: unknown problem '" + name + "'");
}

/// Synthetic decomposition model: smooth part S, boundary layer E at x = 0 and
/// weak interior layer W at x = 1, all with closed-form derivatives.
struct LayerModel {
  double beta = 2.0;
  double epsilon = 1e-6;
  int degree = 1;  ///< studies exercise derivatives up to degree+1

  double S(double x, int order = 0) const {
    const double a = 0.5 * std::numbers::pi;
    return std::pow(a, order) * std::cos(a * x + order * 0.5 * std::numbers::pi);
  }
  double E(double x, int order = 0) const {
    return std::pow(-beta / epsilon, order) * std::exp(-beta * x / epsilon);
  }
  double W(double x, int order = 0) const {
    if (x < 1.0) return 0.0;  // right-closed: W(1) is the layer amplitude eps
    return epsilon * std::pow(-beta / epsilon, order) *
           std::exp(-beta * (x - 1.0) / epsilon);
  }
  double value(double x, int order = 0) const {
    return S(x, order) + E(x, order) + W(x, order);
  }

  /// Linear interpolant of the boundary values; value() - lift() is in H^1_0.
  double lift(double x) const {
    const double u0 = value(0.0);
    const double u2 = value(2.0);
    return u0 + 0.5 * (u2 - u0) * x;
  }
  double lifted(double x) const { return value(x) - lift(x); }
  double lifted_prime(double x) const {
    return value(x, 1) - 0.5 * (value(2.0) - value(0.0));
  }
};

inline LayerModel layer_model(double beta, double epsilon, int degree) {
  if (!(beta > 0.0)) throw std::invalid_argument("layer_model: beta must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("layer_model: epsilon must be positive");
  if (degree < 1) throw std::invalid_argument("layer_model: degree must be >= 1");
  return LayerModel{beta, epsilon, degree};
}

}  // namespace shiftfem
