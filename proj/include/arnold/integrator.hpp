#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "arnold/errors.hpp"

namespace arnold {

struct IntegratorConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double max_step = 0.25;
  double min_step = 1e-12;
  /// Accepted plus rejected steps allowed per call before giving up.
  std::size_t max_steps = 50'000'000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
      throw InvalidArgument("integrator tolerances must be positive");
    }
    if (!(min_step > 0.0) || !(min_step < max_step)) {
      throw InvalidArgument("integrator requires 0 < min_step < max_step");
    }
  }
};

template <std::size_t N>
using State = std::array<double, N>;

namespace detail {

// Fehlberg 7(8) tableau; the eighth-order solution is propagated.
struct Rkf78 {
  static constexpr std::size_t stages = 13;
  static constexpr std::array<double, stages> c{
      0.0,       2.0 / 27.0, 1.0 / 9.0, 1.0 / 6.0, 5.0 / 12.0, 1.0 / 2.0, 5.0 / 6.0,
      1.0 / 6.0, 2.0 / 3.0,  1.0 / 3.0, 1.0,       0.0,        1.0};
  static constexpr std::array<std::array<double, 12>, stages> a{{
      {},
      {2.0 / 27.0},
      {1.0 / 36.0, 1.0 / 12.0},
      {1.0 / 24.0, 0.0, 1.0 / 8.0},
      {5.0 / 12.0, 0.0, -25.0 / 16.0, 25.0 / 16.0},
      {1.0 / 20.0, 0.0, 0.0, 1.0 / 4.0, 1.0 / 5.0},
      {-25.0 / 108.0, 0.0, 0.0, 125.0 / 108.0, -65.0 / 27.0, 125.0 / 54.0},
      {31.0 / 300.0, 0.0, 0.0, 0.0, 61.0 / 225.0, -2.0 / 9.0, 13.0 / 900.0},
      {2.0, 0.0, 0.0, -53.0 / 6.0, 704.0 / 45.0, -107.0 / 9.0, 67.0 / 90.0, 3.0},
      {-91.0 / 108.0, 0.0, 0.0, 23.0 / 108.0, -976.0 / 135.0, 311.0 / 54.0, -19.0 / 60.0,
       17.0 / 6.0, -1.0 / 12.0},
      {2383.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0, -301.0 / 82.0,
       2133.0 / 4100.0, 45.0 / 82.0, 45.0 / 164.0, 18.0 / 41.0},
      {3.0 / 205.0, 0.0, 0.0, 0.0, 0.0, -6.0 / 41.0, -3.0 / 205.0, -3.0 / 41.0, 3.0 / 41.0,
       6.0 / 41.0, 0.0},
      {-1777.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0, -289.0 / 82.0,
       2193.0 / 4100.0, 51.0 / 82.0, 33.0 / 164.0, 12.0 / 41.0, 0.0, 1.0},
  }};
  static constexpr std::array<double, stages> b{
      0.0, 0.0, 0.0, 0.0, 0.0, 34.0 / 105.0, 9.0 / 35.0, 9.0 / 35.0, 9.0 / 280.0, 9.0 / 280.0,
      0.0, 41.0 / 840.0, 41.0 / 840.0};
  // Error weight: (b8 - b7) = 41/840 * (-1, 0, ..., 0, -1, 1, 1) on stages 0, 10, 11, 12.
  static constexpr double err_weight = 41.0 / 840.0;
};

}  // namespace detail

/// Adaptive embedded Runge-Kutta (Fehlberg 7(8)) driver for small fixed-size
/// systems. Step control is proportional-integral on the max-norm of the
/// scaled local error. The step size is remembered between `advance` calls,
/// so integrating through a list of stop times costs little extra.
template <std::size_t N>
class EmbeddedStepper {
 public:
  EmbeddedStepper(const IntegratorConfig& cfg, double step_cap)
      : cfg_(cfg), cap_(std::min(cfg.max_step, step_cap)) {
    cfg_.validate();
    if (!(cap_ > cfg_.min_step)) {
      throw StepUnderflow("step cap " + std::to_string(cap_) + " is below min_step");
    }
  }

  /// Integrates y from t to t_end (either direction); on return t == t_end.
  template <class Rhs>
  void advance(Rhs&& rhs, State<N>& y, double& t, double t_end) {
    if (t_end == t) return;
    const double dir = t_end > t ? 1.0 : -1.0;
    if (h_ == 0.0) h_ = 0.5 * cap_;
    State<N> y_new{};
    State<N> err{};
    while ((t_end - t) * dir > 0.0) {
      const double remaining = std::abs(t_end - t);
      double h = std::min(h_, cap_);
      const bool last = h >= remaining * (1.0 - 1e-12);
      if (last) h = remaining;
      step(rhs, t, y, dir * h, y_new, err);
      const double e = error_norm(y, y_new, err);
      if (++attempts_ > cfg_.max_steps) {
        throw StepUnderflow("step budget exhausted at t = " + std::to_string(t));
      }
      if (e <= 1.0) {
        t = last ? t_end : t + dir * h;
        y = y_new;
        ++accepted_;
        const double ee = std::max(e, 1e-10);
        double fac = kSafety * std::pow(ee, -kAlpha) * std::pow(err_prev_, kBeta);
        fac = std::clamp(fac, kFacMin, rejected_last_ ? 1.0 : kFacMax);
        err_prev_ = ee;
        rejected_last_ = false;
        // A short final step does not say anything about the natural step size.
        if (!(last && h < h_)) h_ = std::min(h * fac, cap_);
      } else {
        ++rejected_;
        rejected_last_ = true;
        const double fac = std::max(kFacMin, kSafety * std::pow(e, -1.0 / 8.0));
        h_ = h * fac;
        if (h_ < cfg_.min_step) {
          throw StepUnderflow("required step " + std::to_string(h_) + " below min_step at t = " +
                              std::to_string(t));
        }
      }
    }
  }

  std::size_t accepted() const { return accepted_; }
  std::size_t rejected() const { return rejected_; }

 private:
  static constexpr double kSafety = 0.9;
  static constexpr double kAlpha = 0.7 / 8.0;
  static constexpr double kBeta = 0.4 / 8.0;
  static constexpr double kFacMin = 0.2;
  static constexpr double kFacMax = 5.0;

  template <class Rhs>
  static void step(Rhs& rhs, double t, const State<N>& y, double h, State<N>& y_new,
                   State<N>& err) {
    using T = detail::Rkf78;
    std::array<State<N>, T::stages> k{};
    State<N> tmp{};
    for (std::size_t s = 0; s < T::stages; ++s) {
      for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < s; ++j) acc += T::a[s][j] * k[j][i];
        tmp[i] = y[i] + h * acc;
      }
      rhs(t + T::c[s] * h, tmp, k[s]);
    }
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (std::size_t s = 0; s < T::stages; ++s) acc += T::b[s] * k[s][i];
      y_new[i] = y[i] + h * acc;
      err[i] = h * T::err_weight * (-k[0][i] - k[10][i] + k[11][i] + k[12][i]);
    }
  }

  double error_norm(const State<N>& y, const State<N>& y_new, const State<N>& err) const {
    double e = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double scale =
          cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      e = std::max(e, std::abs(err[i]) / scale);
    }
    return std::isfinite(e) ? e : std::numeric_limits<double>::infinity();
  }

  IntegratorConfig cfg_;
  double cap_;
  double h_ = 0.0;
  double err_prev_ = 1e-4;
  bool rejected_last_ = false;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
  std::size_t attempts_ = 0;
};

}  // namespace arnold
