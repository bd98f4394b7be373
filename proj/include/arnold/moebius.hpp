#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "arnold/errors.hpp"
#include "arnold/flow.hpp"
#include "arnold/forcing.hpp"
#include "arnold/integrator.hpp"

namespace arnold {

/// Exact lifted Poincaré map of the Josephson flow.
///
/// The substitution u = tan(x/2) turns the flow into the Riccati equation
///   2μ u' = (1 + a + b g) + (a + b g − 1) u²,
/// which is the projectivisation (u = v₁/v₂) of the trace-free system
///   v₁' = (1 + a + b g)/(2μ) v₂,   v₂' = −(a + b g − 1)/(2μ) v₁.
/// The period map of that system is the unit-determinant matrix below. A
/// circle point x corresponds to the direction (sin x/2, cos x/2).
///
/// The lift is fixed as follows. Write the matrix in the basis (v₂, v₁) and
/// take its polar decomposition R(α)·S with S symmetric positive definite.
/// S turns every direction by β ∈ (−π/2, π/2), continuously in x, so
///   L(x) = x + 2α + 2β(x/2)
/// is a continuous increasing lift (the canonical one). The map is
/// L(x) + 2π·winding, with the winding read off a reference trajectory.
struct MoebiusMap {
  double m11 = 1.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 1.0;
  std::int64_t winding = 0;
  /// |det − 1| of the raw integrated matrix, relative to ‖M‖²_F / 2.
  double det_drift = 0.0;

  double trace() const { return m11 + m22; }
  double det() const { return m11 * m22 - m12 * m21; }

  static MoebiusMap identity(std::int64_t winding = 0) { return {1.0, 0.0, 0.0, 1.0, winding, 0.0}; }
};

enum class MapClass { elliptic, parabolic, hyperbolic, identity };

inline const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::elliptic:
      return "elliptic";
    case MapClass::parabolic:
      return "parabolic";
    case MapClass::hyperbolic:
      return "hyperbolic";
    case MapClass::identity:
      return "identity";
  }
  return "unknown";
}

/// Reduces a phase to (−π, π].
inline double wrap_phase(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

/// Distance between two phases on the circle.
inline double circle_distance(double x, double y) { return std::abs(wrap_phase(x - y)); }

/// Rotation angle α of the polar decomposition (see MoebiusMap).
inline double polar_angle(const MoebiusMap& m) { return std::atan2(m.m12 - m.m21, m.m11 + m.m22); }

/// Canonical continuous lift L(x) of the circle action, without winding.
inline double canonical_lift(const MoebiusMap& m, double x) {
  const double alpha = polar_angle(m);
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  // Q = [[m22, m21], [m12, m11]] acts on (v₂, v₁); S = R(−α) Q.
  const double s11 = ca * m.m22 + sa * m.m12;
  const double s12 = ca * m.m21 + sa * m.m11;
  const double s21 = -sa * m.m22 + ca * m.m12;
  const double s22 = -sa * m.m21 + ca * m.m11;
  const double e1 = std::cos(0.5 * x);
  const double e2 = std::sin(0.5 * x);
  const double p1 = s11 * e1 + s12 * e2;
  const double p2 = s21 * e1 + s22 * e2;
  const double beta = std::atan2(e1 * p2 - e2 * p1, e1 * p1 + e2 * p2);
  return x + 2.0 * alpha + 2.0 * beta;
}

/// Lifted Poincaré map x ↦ P̃(x). Continuous, increasing, and
/// P̃(x + 2π) = P̃(x) + 2π.
inline double apply_lifted(const MoebiusMap& m, double x) {
  return canonical_lift(m, x) + kTwoPi * double(m.winding);
}

/// Inverse map (matrix inverse, negated winding).
inline MoebiusMap inverse(const MoebiusMap& m) {
  return {m.m22, -m.m12, -m.m21, m.m11, -m.winding, m.det_drift};
}

/// Composition: applies `inner` first, then `outer`.
inline MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner) {
  MoebiusMap r;
  r.m11 = outer.m11 * inner.m11 + outer.m12 * inner.m21;
  r.m12 = outer.m11 * inner.m12 + outer.m12 * inner.m22;
  r.m21 = outer.m21 * inner.m11 + outer.m22 * inner.m21;
  r.m22 = outer.m21 * inner.m12 + outer.m22 * inner.m22;
  r.det_drift = outer.det_drift + inner.det_drift;
  const double target = apply_lifted(outer, apply_lifted(inner, 0.0));
  r.winding = std::llround((target - canonical_lift(r, 0.0)) / kTwoPi);
  return r;
}

/// min(‖M − I‖, ‖M + I‖) in the max-entry norm.
inline double identity_defect(const MoebiusMap& m) {
  const double dp = std::max({std::abs(m.m11 - 1.0), std::abs(m.m22 - 1.0), std::abs(m.m12),
                              std::abs(m.m21)});
  const double dm = std::max({std::abs(m.m11 + 1.0), std::abs(m.m22 + 1.0), std::abs(m.m12),
                              std::abs(m.m21)});
  return std::min(dp, dm);
}

/// tr² − 4 computed as (m11 − m22)² + 4 m12 m21, which keeps precision for
/// near-rotations (equal to tr² − 4 det when det = 1).
inline double discriminant(const MoebiusMap& m) {
  const double d = m.m11 - m.m22;
  return d * d + 4.0 * m.m12 * m.m21;
}

struct ClassifyTolerances {
  double identity = 1e-8;
  double trace = 1e-8;
};

inline MapClass classify(const MoebiusMap& m, ClassifyTolerances tol = {}) {
  if (identity_defect(m) <= tol.identity) return MapClass::identity;
  const double t = std::abs(m.trace());
  if (t < 2.0 - tol.trace) return MapClass::elliptic;
  if (t > 2.0 + tol.trace) return MapClass::hyperbolic;
  return MapClass::parabolic;
}

enum class Stability { attracting, repelling, neutral };

struct FixedPoint {
  /// Circle point in (−π, π].
  double x = 0.0;
  /// Derivative of the circle map at x (1/λ² for the eigenvalue λ).
  double multiplier = 1.0;
  Stability stability = Stability::neutral;
};

struct FixedPointSet {
  bool all_fixed = false;
  std::vector<FixedPoint> points;
};

namespace detail {

// Direction fixed by M with eigenvalue lambda, as a circle point.
inline double eigen_direction(const MoebiusMap& m, double lambda) {
  const double a1 = m.m12, a2 = lambda - m.m11;
  const double b1 = lambda - m.m22, b2 = m.m21;
  const bool use_a = std::hypot(a1, a2) >= std::hypot(b1, b2);
  const double v1 = use_a ? a1 : b1;
  const double v2 = use_a ? a2 : b2;
  return wrap_phase(2.0 * std::atan2(v1, v2));
}

}  // namespace detail

/// Fixed points of the circle map (solutions of m21 u² + (m22 − m11) u − m12 = 0
/// in projective form). A parabolic map reports its single (double) fixed
/// point; elliptic maps have none; identity maps report all_fixed.
inline FixedPointSet fixed_points(const MoebiusMap& m, ClassifyTolerances tol = {}) {
  FixedPointSet out;
  switch (classify(m, tol)) {
    case MapClass::identity:
      out.all_fixed = true;
      break;
    case MapClass::elliptic:
      break;
    case MapClass::parabolic: {
      const double half = 0.5 * m.trace();
      out.points.push_back({detail::eigen_direction(m, half), 1.0, Stability::neutral});
      break;
    }
    case MapClass::hyperbolic: {
      const double t = m.trace();
      const double root = std::sqrt(std::max(0.0, discriminant(m)));
      const double big = 0.5 * (t + std::copysign(root, t));
      for (double lambda : {big, 1.0 / big}) {
        const double mult = 1.0 / (lambda * lambda);
        out.points.push_back({detail::eigen_direction(m, lambda), mult,
                              mult < 1.0 ? Stability::attracting : Stability::repelling});
      }
      break;
    }
  }
  return out;
}

/// Relative determinant drift above which a monodromy is rejected.
inline constexpr double kMaxDetDrift = 1e-6;

/// Period map of the Josephson flow over `periods` forcing periods, by
/// integrating the trace-free linear system together with the reference
/// trajectory x(0) = 0 that fixes the winding. Requires γ = 1.
inline MoebiusMap monodromy(const Params& p, const ForcingProfile& forcing,
                            const IntegratorConfig& cfg = {}, int periods = 1) {
  p.validate();
  if (p.gamma != 1.0) {
    throw NotMoebius("Möbius monodromy needs the autonomous term cos x (gamma = 1)");
  }
  if (periods < 1) throw InvalidArgument("periods must be positive");
  EmbeddedStepper<5> stepper(cfg, flow_step_cap(p, forcing));
  const double inv2mu = 0.5 / p.mu;
  auto rhs = [&](double t, const State<5>& y, State<5>& dy) {
    const double drive = p.a + p.b * forcing(t);
    const double a12 = (1.0 + drive) * inv2mu;
    const double a21 = (1.0 - drive) * inv2mu;
    // Columns (y0, y1) and (y2, y3) of the fundamental matrix.
    dy[0] = a12 * y[1];
    dy[1] = a21 * y[0];
    dy[2] = a12 * y[3];
    dy[3] = a21 * y[2];
    dy[4] = (std::cos(y[4]) + drive) / p.mu;
  };
  State<5> y{1.0, 0.0, 0.0, 1.0, 0.0};
  double t = 0.0;
  stepper.advance(rhs, y, t, kTwoPi * periods);

  MoebiusMap m{y[0], y[2], y[1], y[3], 0, 0.0};
  const double raw_det = m.det();
  const double scale = 0.5 * (m.m11 * m.m11 + m.m12 * m.m12 + m.m21 * m.m21 + m.m22 * m.m22);
  m.det_drift = std::abs(raw_det - 1.0) / std::max(1.0, scale);
  if (!(m.det_drift <= kMaxDetDrift)) {
    throw DeterminantDrift("monodromy determinant drift " + std::to_string(m.det_drift));
  }
  if (raw_det > 0.0) {
    const double s = 1.0 / std::sqrt(raw_det);
    m.m11 *= s;
    m.m12 *= s;
    m.m21 *= s;
    m.m22 *= s;
  }
  m.winding = std::llround((y[4] - canonical_lift(m, 0.0)) / kTwoPi);
  return m;
}

}  // namespace arnold
