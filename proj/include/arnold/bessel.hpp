#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "arnold/errors.hpp"
#include "arnold/forcing.hpp"
#include "arnold/quadrature.hpp"

// Conventions. bessel_j(k, z) and bessel_j_integral(k, z) are the classical
// J_k(z) = (1/2π) ∫_0^{2π} cos(k t − z sin t) dt, so bessel_j(k, −z) is the
// tongue-boundary quantity J_k(−z) = (1/2π) ∫ cos(k t + z sin t) dt. The
// generalized function and both asymptotic formulas take z > 0 and return
// the value at −z directly, matching how they enter the boundary estimates.

namespace arnold {

enum class BesselRoute { series, recurrence, integral, asymptotic };

inline const char* to_string(BesselRoute r) {
  switch (r) {
    case BesselRoute::series:
      return "series";
    case BesselRoute::recurrence:
      return "recurrence";
    case BesselRoute::integral:
      return "integral";
    case BesselRoute::asymptotic:
      return "asymptotic";
  }
  return "unknown";
}

struct BesselEval {
  int k = 0;
  double z = 0.0;
  double value = 0.0;
  BesselRoute route = BesselRoute::series;
  double est_err = 0.0;
};

namespace detail {

// Power series Σ (−1)^m (x/2)^{2m+n} / (m! (m+n)!), n ≥ 0.
inline double bessel_series(int n, double x, double* est_err = nullptr) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / double(i);
  double sum = term;
  double mag = std::abs(term);
  const double q = -half * half;
  for (int m = 1; m < 500; ++m) {
    term *= q / (double(m) * double(m + n));
    sum += term;
    mag = std::max(mag, std::abs(term));
    if (std::abs(term) <= 1e-17 * std::abs(sum) && double(m) > std::abs(half)) break;
  }
  if (est_err) *est_err = 4.0 * std::numeric_limits<double>::epsilon() * mag;
  return sum;
}

// Miller's backward recurrence J_{k−1} = (2k/x) J_k − J_{k+1}, normalized by
// J_0 + 2 Σ J_{2i} = 1. Requires n ≥ 0, x > 0. The start order sits past
// the turning point by a margin growing like x^{1/3}.
inline double bessel_miller(int n, double x, double* est_err = nullptr) {
  const double top = std::max(double(n), x);
  int m = int(top + 25.0 + 20.0 * std::cbrt(top));
  if (m % 2) ++m;
  double j_next = 0.0;
  double j = 1e-30;
  double ans = (m == n) ? j : 0.0;
  double even_sum = j;  // m is even
  for (int k = m; k > 0; --k) {
    const double j_prev = (2.0 * double(k) / x) * j - j_next;
    j_next = j;
    j = j_prev;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      j_next *= 1e-250;
      ans *= 1e-250;
      even_sum *= 1e-250;
    }
    const int order = k - 1;
    if (order == n) ans = j;
    if (order > 0 && order % 2 == 0) even_sum += j;
  }
  const double norm = j + 2.0 * even_sum;
  if (est_err) *est_err = double(m) * std::numeric_limits<double>::epsilon();
  return ans / norm;
}

}  // namespace detail

/// J_k(z) by power series (|z| ≤ 5) or normalized backward recurrence.
inline BesselEval bessel_j_eval(int k, double z) {
  BesselEval out{k, z, 0.0, BesselRoute::series, 0.0};
  if (z == 0.0) {
    out.value = (k == 0) ? 1.0 : 0.0;
    return out;
  }
  // J_{−n} = (−1)^n J_n and J_n(−x) = (−1)^n J_n(x).
  const int n = std::abs(k);
  double sign = 1.0;
  if (k < 0 && (n % 2)) sign = -sign;
  if (z < 0.0 && (n % 2)) sign = -sign;
  const double x = std::abs(z);
  double err = 0.0;
  double v;
  if (x <= 5.0) {
    v = detail::bessel_series(n, x, &err);
    out.route = BesselRoute::series;
  } else {
    v = detail::bessel_miller(n, x, &err);
    out.route = BesselRoute::recurrence;
  }
  out.value = sign * v;
  out.est_err = err;
  return out;
}

inline double bessel_j(int k, double z) { return bessel_j_eval(k, z).value; }

/// J_k(z) by adaptive quadrature of its defining integral, absolute error
/// target `abs_tol`.
inline BesselEval bessel_j_integral_eval(int k, double z, double abs_tol = 1e-12) {
  const auto panels = std::size_t((std::abs(double(k)) + std::abs(z)) / kPi) + 4;
  const auto q = integrate_panels(
      [k, z](double t) { return std::cos(double(k) * t - z * std::sin(t)); }, 0.0, kTwoPi, panels,
      abs_tol * kTwoPi);
  return {k, z, q.value / kTwoPi, BesselRoute::integral, q.est_err / kTwoPi};
}

inline double bessel_j_integral(int k, double z) { return bessel_j_integral_eval(k, z).value; }

/// J̃_k(−z) = (1/2π) ∫_0^{2π} cos(k t + z G(t)) dt with G the antiderivative of
/// the forcing. Reduces to bessel_j(k, −z) for g = cos.
inline double gen_bessel(int k, double z, const ForcingProfile& forcing, double abs_tol = 1e-12) {
  const double slope = std::max(forcing.sup_norm(), forcing.antiderivative_bound());
  const auto panels = std::size_t((std::abs(double(k)) + std::abs(z) * slope) / kPi) + 4;
  const auto q = integrate_panels(
      [&](double t) { return std::cos(double(k) * t + z * forcing.antiderivative(t)); }, 0.0,
      kTwoPi, panels, abs_tol * kTwoPi);
  return q.value / kTwoPi;
}

/// Leading large-z term of J_k(−z): √(2/(πz)) cos(−z − kπ/2 + π/4). z ≥ 5.
inline double bessel_asymptotic(int k, double z) {
  if (!(z >= 5.0)) throw DomainTooSmall("bessel_asymptotic needs z >= 5");
  return std::sqrt(2.0 / (kPi * z)) * std::cos(-z - double(k) * kPi / 2.0 + kPi / 4.0);
}

/// Stationary-phase leading term of J̃_k(−z):
///   Σ_j (2πz|g'(t_j)|)^{−1/2} cos(z G(t_j) + k t_j + (π/4) sgn g'(t_j))
/// over the zeros t_j of g. Needs every zero to be simple and z ≥ 5.
inline double gen_bessel_asymptotic(int k, double z, const ForcingProfile& forcing) {
  if (!(z >= 5.0)) throw DomainTooSmall("gen_bessel_asymptotic needs z >= 5");
  const auto rep = forcing_transversality_report(forcing);
  double sum = 0.0;
  for (const auto& zero : rep.zeros) {
    const double s = zero.slope;
    const double phase =
        z * forcing.antiderivative(zero.t) + double(k) * zero.t + std::copysign(kPi / 4.0, s);
    sum += std::cos(phase) / std::sqrt(kTwoPi * z * std::abs(s));
  }
  return sum;
}

}  // namespace arnold
