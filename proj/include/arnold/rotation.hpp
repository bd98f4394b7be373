#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "arnold/errors.hpp"
#include "arnold/flow.hpp"
#include "arnold/moebius.hpp"

namespace arnold {

enum class RhoMethod { moebius, iterated };

struct RotationNumber {
  double value = 0.0;
  /// True when the Poincaré map is not elliptic (|trace| ≥ 2 − tol).
  bool locked = false;
  /// Integer rotation number when locked; nearest integer otherwise.
  std::int64_t k = 0;
  RhoMethod method = RhoMethod::moebius;
};

/// Default trace band treated as phase-locked.
inline constexpr double kLockTolerance = 1e-8;

/// Rotation number of a lifted Möbius circle map.
///
/// The displacement P̃(x) − x = 2α + 2β(x/2) + 2πw stays within
/// 2α + 2πw ± 2β_max with β_max < π/2, and 2πρ lies in that range, so
/// |ρ − c| < 1/2 for c = α/π + w. A locked map has integer ρ, hence
/// ρ = round(c). An elliptic map is conjugate to a rotation of the direction
/// by ±θ (tr = 2cos θ, sign of m12 gives the orientation), which moves x by
/// ±2θ, so ρ ≡ ±θ/π (mod 1); the representative nearest c is the answer.
inline RotationNumber rotation_number_of(const MoebiusMap& m, double lock_tol = kLockTolerance) {
  const double center = polar_angle(m) / kPi + double(m.winding);
  RotationNumber r;
  r.method = RhoMethod::moebius;
  if (std::abs(m.trace()) >= 2.0 - lock_tol) {
    r.locked = true;
    r.k = std::llround(center);
    r.value = double(r.k);
    return r;
  }
  const double theta = std::atan2(0.5 * std::sqrt(std::max(0.0, -discriminant(m))),
                                  0.5 * m.trace());
  const double frac = std::copysign(theta / kPi, m.m12);
  r.value = frac + std::round(center - frac);
  r.locked = false;
  r.k = std::llround(r.value);
  return r;
}

/// ρ(a, b, μ) through the exact Möbius monodromy.
inline RotationNumber rotation_number(const Params& p, const ForcingProfile& forcing,
                                      const IntegratorConfig& cfg = {},
                                      double lock_tol = kLockTolerance) {
  return rotation_number_of(monodromy(p, forcing, cfg), lock_tol);
}

/// Direct estimate from one long integration with x(0) = 0, works for any γ.
/// The advance is measured over the second half, periods m = ⌊n/2⌋ .. n:
/// (x(2πn) − x(2πm)) / (2π(n − m)). A monotone degree-one lift moves any
/// point within 2π of 2πρ per iterate count, so the error is below
/// 1/(n − m) ≤ 2/n, and a trapped (locked) orbit contributes no transient.
/// Never reports a lock.
inline RotationNumber rotation_number_iterated(const Params& p, const ForcingProfile& forcing,
                                               long n_periods, const IntegratorConfig& cfg = {}) {
  if (n_periods < 1) throw InvalidArgument("n_periods must be at least 1");
  const long m = n_periods / 2;
  const double t_mid = kTwoPi * double(m);
  const double t_end = kTwoPi * double(n_periods);
  const std::array<double, 3> times{0.0, t_mid, t_end};
  double x_mid = 0.0, x_end = 0.0;
  if (m == 0) {
    x_end = integrate_flow(p, forcing, 0.0, 0.0, t_end, cfg).x1;
  } else {
    int stop = 0;
    integrate_flow_sampled(p, forcing, 0.0, times, cfg, [&](double, double x, double) {
      if (stop == 1) x_mid = x;
      if (stop == 2) x_end = x;
      ++stop;
    });
  }
  RotationNumber r;
  r.method = RhoMethod::iterated;
  r.value = (x_end - x_mid) / (kTwoPi * double(n_periods - m));
  r.k = std::llround(r.value);
  return r;
}

}  // namespace arnold
