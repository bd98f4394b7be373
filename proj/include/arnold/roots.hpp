#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "arnold/errors.hpp"

namespace arnold {

/// A sign-changing bracket [lo, hi] with cached function values.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

/// Brent's method (inverse quadratic interpolation guarded by bisection).
/// Requires f(lo) and f(hi) of opposite sign (or zero). Stops once the
/// bracket half-width falls below `x_tol` (plus a few ulps of the iterate).
template <class F>
double brent_root(F&& f, Bracket br, double x_tol, std::size_t max_iter = 200) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = br.lo, b = br.hi, fa = br.f_lo, fb = br.f_hi;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BracketFailure("brent_root: endpoints do not bracket a root");
  }
  double c = b, fc = fb;
  double d = 0.0, e = 0.0;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * x_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  return b;
}

/// Grows [center - half_width, center + half_width] by doubling the
/// half-width until an increasing function changes sign across it.
template <class F>
Bracket bracket_increasing(F&& f, double center, double half_width,
                           int max_doublings = 20) {
  double w = half_width;
  for (int i = 0; i <= max_doublings; ++i) {
    Bracket br{center - w, center + w, 0.0, 0.0};
    br.f_lo = f(br.lo);
    br.f_hi = f(br.hi);
    if (br.f_lo <= 0.0 && br.f_hi >= 0.0) return br;
    // Shift toward the root before widening; f is increasing.
    if (br.f_lo > 0.0) {
      center -= w;
    } else {
      center += w;
    }
    w *= 2.0;
  }
  throw BracketFailure("no sign change after " + std::to_string(max_doublings) +
                       " bracket doublings");
}

}  // namespace arnold
