#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "arnold/errors.hpp"
#include "arnold/forcing.hpp"
#include "arnold/integrator.hpp"

namespace arnold {

/// Parameters of dx/dt = (γ cos x + a + b g(t)) / μ.
struct Params {
  double a = 0.0;
  double b = 0.0;
  double mu = 1.0;
  /// Weight of the autonomous term; 1 is the Josephson equation, 0 the
  /// integrable comparison flow.
  double gamma = 1.0;

  void validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("mu must be positive");
    if (!(std::abs(gamma) <= 1.0)) throw InvalidArgument("|gamma| must not exceed 1");
    if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("a and b must be finite");
  }
};

inline double rhs_eval(const Params& p, const ForcingProfile& forcing, double x, double t) {
  return (p.gamma * std::cos(x) + p.a + p.b * forcing(t)) / p.mu;
}

/// One integrated arc of the flow. Phases are lifted (never reduced mod 2π).
struct SolutionArc {
  double t0 = 0.0;
  double t1 = 0.0;
  double x0 = 0.0;
  double x1 = 0.0;
  /// ∫_{t0}^{t1} cos x(τ) dτ, integrated alongside x.
  double osc = 0.0;
  std::size_t steps = 0;
};

/// Step cap keeping the phase advance per step near π/4:
/// 2πμ / (8 (|γ| + |a| + |b| sup|g|)).
inline double flow_step_cap(const Params& p, const ForcingProfile& forcing) {
  const double speed = std::abs(p.gamma) + std::abs(p.a) + std::abs(p.b) * forcing.sup_norm();
  if (speed == 0.0) return kTwoPi;
  return kTwoPi * p.mu / (8.0 * speed);
}

/// Residual of the integral identity
///   x1 - x0 = (a Δt + b ΔG + γ osc) / μ.
inline double integral_identity_defect(const Params& p, const ForcingProfile& forcing,
                                       const SolutionArc& arc) {
  const double dG = forcing.antiderivative(arc.t1) - forcing.antiderivative(arc.t0);
  const double predicted = (p.a * (arc.t1 - arc.t0) + p.b * dG + p.gamma * arc.osc) / p.mu;
  return (arc.x1 - arc.x0) - predicted;
}

namespace detail {

inline auto flow_rhs(const Params& p, const ForcingProfile& forcing) {
  return [&p, &forcing](double t, const State<2>& y, State<2>& dy) {
    const double c = std::cos(y[0]);
    dy[0] = (p.gamma * c + p.a + p.b * forcing(t)) / p.mu;
    dy[1] = c;
  };
}

}  // namespace detail

/// Integrates the flow from (t0, x0) to t1, accumulating ∫cos x alongside.
/// Either direction of time is allowed.
inline SolutionArc integrate_flow(const Params& p, const ForcingProfile& forcing, double x0,
                                  double t0, double t1, const IntegratorConfig& cfg = {}) {
  p.validate();
  EmbeddedStepper<2> stepper(cfg, flow_step_cap(p, forcing));
  State<2> y{x0, 0.0};
  double t = t0;
  stepper.advance(detail::flow_rhs(p, forcing), y, t, t1);
  return SolutionArc{t0, t1, x0, y[0], y[1], stepper.accepted()};
}

/// Integrates through the increasing stop times `times` (times[0] is the
/// start) and calls `observe(t, x, osc)` at every stop, including the first.
template <class Observer>
SolutionArc integrate_flow_sampled(const Params& p, const ForcingProfile& forcing, double x0,
                                   std::span<const double> times, const IntegratorConfig& cfg,
                                   Observer&& observe) {
  p.validate();
  if (times.empty()) throw InvalidArgument("integrate_flow_sampled needs at least one time");
  EmbeddedStepper<2> stepper(cfg, flow_step_cap(p, forcing));
  auto rhs = detail::flow_rhs(p, forcing);
  State<2> y{x0, 0.0};
  double t = times.front();
  observe(t, y[0], y[1]);
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("sample times must increase");
    stepper.advance(rhs, y, t, times[i]);
    observe(t, y[0], y[1]);
  }
  return SolutionArc{times.front(), times.back(), x0, y[0], y[1], stepper.accepted()};
}

/// Rotation number for b = 0 in closed form: 0 when |a| ≤ 1, otherwise
/// sgn(a) √(a² − 1) / μ.
inline double autonomous_rho(double a, double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
  if (std::abs(a) <= 1.0) return 0.0;
  const double m = std::abs(a);
  return std::copysign(std::sqrt((m - 1.0) * (m + 1.0)), a) / mu;
}

}  // namespace arnold
