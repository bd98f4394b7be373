#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "arnold/errors.hpp"
#include "arnold/forcing.hpp"

namespace arnold {

/// Nodes and weights of the N-point Gauss-Legendre rule on [-1, 1].
template <std::size_t N>
struct GaussLegendre {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussLegendre() {
    for (std::size_t i = 0; i < N; ++i) {
      double x = std::cos(kPi * (double(i) + 0.75) / (double(N) + 0.5));
      double dp = 1.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (std::size_t n = 2; n <= N; ++n) {
          const double p2 = ((2.0 * double(n) - 1.0) * x * p1 - (double(n) - 1.0) * p0) / double(n);
          p0 = p1;
          p1 = p2;
        }
        dp = double(N) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  static const GaussLegendre& get() {
    static const GaussLegendre rule;
    return rule;
  }
};

/// Composite Gauss-Legendre (10 points per panel) on `panels` equal panels.
template <class F>
double composite_gauss(F&& f, double lo, double hi, std::size_t panels) {
  const auto& gl = GaussLegendre<10>::get();
  const double w = (hi - lo) / double(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = lo + (double(p) + 0.5) * w;
    double acc = 0.0;
    for (std::size_t i = 0; i < 10; ++i) acc += gl.weights[i] * f(mid + 0.5 * w * gl.nodes[i]);
    sum += 0.5 * w * acc;
  }
  return sum;
}

struct QuadratureResult {
  double value = 0.0;
  double est_err = 0.0;
  std::size_t panels = 0;
};

/// Doubles the panel count from `initial_panels` until two successive
/// composite sums agree to `abs_tol`; the finer sum is returned with the
/// difference as its error estimate. Throws QuadratureStall beyond
/// `max_panels`.
template <class F>
QuadratureResult integrate_panels(F&& f, double lo, double hi, std::size_t initial_panels,
                                  double abs_tol, std::size_t max_panels = 1u << 18) {
  std::size_t panels = std::max<std::size_t>(1, initial_panels);
  double coarse = composite_gauss(f, lo, hi, panels);
  while (2 * panels <= max_panels) {
    panels *= 2;
    const double fine = composite_gauss(f, lo, hi, panels);
    const double err = std::abs(fine - coarse);
    if (err <= abs_tol) return {fine, err, panels};
    coarse = fine;
  }
  throw QuadratureStall("quadrature did not reach " + std::to_string(abs_tol) + " within " +
                        std::to_string(max_panels) + " panels");
}

}  // namespace arnold
