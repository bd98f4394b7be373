#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "arnold/bessel.hpp"
#include "arnold/errors.hpp"
#include "arnold/flow.hpp"
#include "arnold/forcing.hpp"
#include "arnold/moebius.hpp"
#include "arnold/roots.hpp"

namespace arnold {

/// Both boundary values of the k-th tongue at one amplitude b.
struct BoundaryPoint {
  int k = 0;
  double b = 0.0;
  double mu = 1.0;
  /// Boundary where x = 0 is fixed (mod 2π) by the Poincaré map.
  double a0 = 0.0;
  /// Boundary where x = π is fixed.
  double api = 0.0;
  double a_minus = 0.0;
  double a_plus = 0.0;
  double width = 0.0;
  /// kμ − J_k(−b/μ) and kμ + J_k(−b/μ) (J̃_k for a non-cosine forcing).
  double bessel_pred_0 = 0.0;
  double bessel_pred_pi = 0.0;
  double residual_0 = 0.0;
  double residual_pi = 0.0;
  /// Values taken from the b = 0 closed form instead of root finding.
  bool closed_form = false;
};

struct TracerOptions {
  ForcingProfile forcing = ForcingProfile::cosine();
  IntegratorConfig integrator{};
  /// Root tolerance in a.
  double tol_a = 1e-12;
  /// Below this amplitude the b = 0 endpoints are reported.
  double closed_form_below = 0.01;
  int max_doublings = 20;
};

/// Previous-node roots used to seed the brackets of the next node.
struct WarmStart {
  double a0 = 0.0;
  double api = 0.0;
  double half_width = 1e-3;
};

namespace detail {

inline bool is_plain_cosine(const ForcingProfile& g) {
  return g.cos_coeffs().size() == 1 && g.cos_coeffs()[0] == 1.0 && g.is_even() &&
         std::all_of(g.sin_coeffs().begin(), g.sin_coeffs().end(),
                     [](double s) { return s == 0.0; });
}

inline double boundary_bessel(int k, double b, double mu, const ForcingProfile& g) {
  if (is_plain_cosine(g)) return bessel_j(k, -b / mu);
  return gen_bessel(k, b / mu, g);
}

inline void finish_point(BoundaryPoint& pt, const ForcingProfile& g) {
  pt.a_minus = std::min(pt.a0, pt.api);
  pt.a_plus = std::max(pt.a0, pt.api);
  pt.width = pt.a_plus - pt.a_minus;
  const double j = boundary_bessel(pt.k, pt.b, pt.mu, g);
  pt.bessel_pred_0 = pt.k * pt.mu - j;
  pt.bessel_pred_pi = pt.k * pt.mu + j;
  pt.residual_0 = std::abs(pt.a0 - pt.bessel_pred_0);
  pt.residual_pi = std::abs(pt.api - pt.bessel_pred_pi);
}

}  // namespace detail

/// F(a) = P̃_a(x) − x − 2πk, strictly increasing in a; its root is the
/// tongue boundary on which x is fixed.
inline double boundary_function(int k, double a, double b, double mu, double x,
                                const TracerOptions& opt) {
  const auto m = monodromy(Params{a, b, mu, 1.0}, opt.forcing, opt.integrator);
  return apply_lifted(m, x) - x - kTwoPi * double(k);
}

/// Cold-start bracket half-width around kμ.
inline double cold_half_width(double b, double mu) { return 2.0 / std::sqrt(b * mu) + 0.5; }

/// Boundaries a₀ₖ(b) and a_πk(b) of the k-th tongue by bracketing and Brent.
inline BoundaryPoint boundary_at(int k, double b, double mu, const TracerOptions& opt = {},
                                 const std::optional<WarmStart>& warm = std::nullopt) {
  Params{0.0, b, mu, 1.0}.validate();
  if (b < 0.0) throw InvalidArgument("boundary_at expects b >= 0");
  BoundaryPoint pt;
  pt.k = k;
  pt.b = b;
  pt.mu = mu;
  if (b < opt.closed_form_below) {
    if (k == 0) {
      pt.a0 = -1.0;
      pt.api = 1.0;
    } else {
      pt.a0 = pt.api = std::copysign(std::sqrt(double(k) * k * mu * mu + 1.0), double(k));
    }
    pt.closed_form = true;
    detail::finish_point(pt, opt.forcing);
    return pt;
  }

  auto solve = [&](double x, std::optional<double> guess, double guess_width) {
    auto f = [&](double a) { return boundary_function(k, a, b, mu, x, opt); };
    Bracket br;
    bool have = false;
    if (guess) {
      try {
        br = bracket_increasing(f, *guess, guess_width, 8);
        have = true;
      } catch (const BracketFailure&) {
      }
    }
    if (!have) br = bracket_increasing(f, k * mu, cold_half_width(b, mu), opt.max_doublings);
    return brent_root(f, br, opt.tol_a);
  };
  std::optional<double> g0, gpi;
  double w = 0.0;
  if (warm) {
    g0 = warm->a0;
    gpi = warm->api;
    w = warm->half_width;
  }
  pt.a0 = solve(0.0, g0, w);
  pt.api = solve(kPi, gpi, w);
  detail::finish_point(pt, opt.forcing);
  return pt;
}

struct TraceFailure {
  double b = 0.0;
  std::string message;
};

struct BoundaryTrace {
  std::vector<BoundaryPoint> points;
  std::vector<TraceFailure> failures;
};

/// boundary_at over an increasing grid, each node warm-started from the
/// previous ones (linear extrapolation of the roots). Node failures are
/// recorded and skipped.
inline BoundaryTrace trace_boundary(int k, const std::vector<double>& b_grid, double mu,
                                    const TracerOptions& opt = {}) {
  BoundaryTrace out;
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    const double b = b_grid[i];
    std::optional<WarmStart> warm;
    const auto& pts = out.points;
    if (!pts.empty() && !pts.back().closed_form) {
      const auto& last = pts.back();
      WarmStart ws{last.a0, last.api, 1e-6};
      if (pts.size() >= 2 && !pts[pts.size() - 2].closed_form) {
        const auto& prev = pts[pts.size() - 2];
        const double r = (b - last.b) / (last.b - prev.b);
        const double d0 = (last.a0 - prev.a0) * r;
        const double dpi = (last.api - prev.api) * r;
        ws.a0 += d0;
        ws.api += dpi;
        ws.half_width = std::max(1e-6, 0.5 * std::max(std::abs(d0), std::abs(dpi)));
      } else {
        ws.half_width = std::max(1e-3, std::abs(b - last.b));
      }
      warm = ws;
    }
    try {
      out.points.push_back(boundary_at(k, b, mu, opt, warm));
    } catch (const Error& e) {
      out.failures.push_back({b, e.what()});
    }
  }
  return out;
}

/// Point where the two boundaries of a tongue meet; the Poincaré map there
/// is ±identity.
struct AdjacencyPoint {
  int k = 0;
  double mu = 1.0;
  double b_star = 0.0;
  double a_star = 0.0;
  double identity_defect = 0.0;
};

struct AdjacencyOptions {
  TracerOptions tracer{};
  /// Scan step in b; defaults to πμ/8 (the boundary crossing spacing is ≈ πμ).
  std::optional<double> b_step;
  double tol_b = 1e-12;
};

/// Scans a₀ − a_π along [b_lo, b_hi] for sign changes and polishes each
/// crossing by Brent in b.
inline std::vector<AdjacencyPoint> find_adjacencies(int k, double b_lo, double b_hi, double mu,
                                                    const AdjacencyOptions& opt = {}) {
  if (!(b_hi > b_lo) || b_lo < 0.0) throw InvalidArgument("find_adjacencies needs 0 <= b_lo < b_hi");
  const double step = opt.b_step.value_or(kPi * mu / 8.0);
  const auto n = std::size_t(std::ceil((b_hi - b_lo) / step));
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid[i] = b_lo + (b_hi - b_lo) * double(i) / double(n);
  const auto trace = trace_boundary(k, grid, mu, opt.tracer);

  std::vector<AdjacencyPoint> out;
  const auto& pts = trace.points;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto& l = pts[i - 1];
    const auto& r = pts[i];
    if (l.closed_form || r.closed_form) continue;
    const double hl = l.a0 - l.api;
    const double hr = r.a0 - r.api;
    if ((hl > 0.0) == (hr > 0.0) && hl != 0.0 && hr != 0.0) continue;

    BoundaryPoint last = l;
    auto h = [&](double b) {
      const double s = (b - l.b) / (r.b - l.b);
      WarmStart ws{l.a0 + s * (r.a0 - l.a0), l.api + s * (r.api - l.api),
                   std::max(1e-9, 0.25 * std::max(std::abs(r.a0 - l.a0), std::abs(r.api - l.api)))};
      last = boundary_at(k, b, mu, opt.tracer, ws);
      return last.a0 - last.api;
    };
    double b_star;
    if (hl == 0.0) {
      b_star = l.b;
    } else if (hr == 0.0) {
      b_star = r.b;
    } else {
      b_star = brent_root(h, Bracket{l.b, r.b, hl, hr}, opt.tol_b);
    }
    const auto at = boundary_at(k, b_star, mu, opt.tracer,
                                WarmStart{last.a0, last.api, 1e-9});
    AdjacencyPoint adj;
    adj.k = k;
    adj.mu = mu;
    adj.b_star = b_star;
    adj.a_star = 0.5 * (at.a0 + at.api);
    adj.identity_defect = identity_defect(
        monodromy(Params{adj.a_star, b_star, mu, 1.0}, opt.tracer.forcing, opt.tracer.integrator));
    if (out.empty() || std::abs(out.back().b_star - b_star) > 10.0 * opt.tol_b) out.push_back(adj);
  }
  return out;
}

}  // namespace arnold
