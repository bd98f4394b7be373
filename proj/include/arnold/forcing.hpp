#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "arnold/errors.hpp"
#include "arnold/roots.hpp"

namespace arnold {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A zero of the forcing on [0, 2π) together with the slope there.
struct ForcingZero {
  double t = 0.0;
  double slope = 0.0;
};

/// Zero-mean 2π-periodic forcing given as a finite Fourier series
///
///   g(t) = Σ_{n≥1} cos_n cos(n t) + sin_n sin(n t).
///
/// Index 0 of each coefficient vector is harmonic 1. There is no constant
/// term: the mean is zero by construction, so the antiderivative G is
/// periodic with G(0) = G(2π) = 0.
class ForcingProfile {
 public:
  ForcingProfile() { analyze(); }

  ForcingProfile(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
      : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    for (double c : cos_) check_finite(c);
    for (double s : sin_) check_finite(s);
    analyze();
  }

  /// Builds a profile from a series that may carry a constant term; the
  /// constant is dropped so the stored forcing has zero mean.
  static ForcingProfile with_mean_removed(double /*mean*/, std::vector<double> cos_coeffs,
                                          std::vector<double> sin_coeffs) {
    return ForcingProfile(std::move(cos_coeffs), std::move(sin_coeffs));
  }

  /// g(t) = cos t, the Josephson drive.
  static ForcingProfile cosine() { return ForcingProfile({1.0}, {}); }

  double operator()(double t) const {
    double g = 0.0;
    for (std::size_t i = 0; i < cos_.size(); ++i) g += cos_[i] * std::cos(double(i + 1) * t);
    for (std::size_t i = 0; i < sin_.size(); ++i) g += sin_[i] * std::sin(double(i + 1) * t);
    return g;
  }

  double derivative(double t) const {
    double d = 0.0;
    for (std::size_t i = 0; i < cos_.size(); ++i) {
      const double n = double(i + 1);
      d -= n * cos_[i] * std::sin(n * t);
    }
    for (std::size_t i = 0; i < sin_.size(); ++i) {
      const double n = double(i + 1);
      d += n * sin_[i] * std::cos(n * t);
    }
    return d;
  }

  /// G(t) = ∫_0^t g, termwise and exact.
  double antiderivative(double t) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < cos_.size(); ++i) {
      const double n = double(i + 1);
      acc += cos_[i] * std::sin(n * t) / n;
    }
    for (std::size_t i = 0; i < sin_.size(); ++i) {
      const double n = double(i + 1);
      acc += sin_[i] * (1.0 - std::cos(n * t)) / n;
    }
    return acc;
  }

  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }

  /// Upper bound on |g'| (the Lipschitz constant L₂).
  double lipschitz() const { return lipschitz_; }
  /// Upper bound on |g|.
  double sup_norm() const { return sup_norm_; }
  /// Upper bound on |G|.
  double antiderivative_bound() const { return g_bound_; }
  bool is_even() const { return is_even_; }
  bool is_zero() const { return sup_norm_ == 0.0; }
  std::size_t max_harmonic() const { return std::max(cos_.size(), sin_.size()); }

  /// Zeros of g on [0, 2π), including tangential ones (slope ≈ 0).
  const std::vector<ForcingZero>& zeros() const { return zeros_; }

 private:
  static void check_finite(double v) {
    if (!std::isfinite(v)) throw InvalidArgument("forcing coefficient is not finite");
  }

  void analyze() {
    sup_norm_ = lipschitz_ = g_bound_ = 0.0;
    for (std::size_t i = 0; i < cos_.size(); ++i) {
      const double n = double(i + 1);
      sup_norm_ += std::abs(cos_[i]);
      lipschitz_ += n * std::abs(cos_[i]);
      g_bound_ += std::abs(cos_[i]) / n;
    }
    for (std::size_t i = 0; i < sin_.size(); ++i) {
      const double n = double(i + 1);
      sup_norm_ += std::abs(sin_[i]);
      lipschitz_ += n * std::abs(sin_[i]);
      g_bound_ += 2.0 * std::abs(sin_[i]) / n;
    }
    is_even_ = std::all_of(sin_.begin(), sin_.end(), [](double s) { return s == 0.0; });
    locate_zeros();
  }

  // Sign changes on a fine grid are polished by Brent; grid extrema of g
  // with |g| tiny and no sign change are kept as tangential zeros.
  void locate_zeros() {
    zeros_.clear();
    if (is_zero()) return;
    const std::size_t n = 4096 * std::max<std::size_t>(1, max_harmonic());
    const double h = kTwoPi / double(n);
    auto g = [this](double t) { return (*this)(t); };
    auto dg = [this](double t) { return derivative(t); };
    const double tangent_tol = 1e-9 * std::max(1.0, sup_norm_);

    for (std::size_t i = 0; i < n; ++i) {
      const double t0 = h * double(i);
      const double t1 = h * double(i + 1);
      const double g0 = g(t0);
      const double g1 = g(t1);
      if (g0 == 0.0) {
        zeros_.push_back({t0, dg(t0)});
        continue;
      }
      if ((g0 < 0.0) != (g1 < 0.0) && g1 != 0.0) {
        const double t = brent_root(g, Bracket{t0, t1, g0, g1}, 1e-16);
        zeros_.push_back({t, dg(t)});
        continue;
      }
      const double d0 = dg(t0);
      const double d1 = dg(t1);
      if ((d0 < 0.0) != (d1 < 0.0) && d1 != 0.0) {
        const double te = brent_root(dg, Bracket{t0, t1, d0, d1}, 1e-16);
        if (std::abs(g(te)) <= tangent_tol) zeros_.push_back({te, dg(te)});
      }
    }
    // A tangential zero may be reported from two neighbouring cells.
    std::sort(zeros_.begin(), zeros_.end(),
              [](const ForcingZero& l, const ForcingZero& r) { return l.t < r.t; });
    zeros_.erase(std::unique(zeros_.begin(), zeros_.end(),
                             [h](const ForcingZero& l, const ForcingZero& r) {
                               return std::abs(l.t - r.t) < 1e-3 * h;
                             }),
                 zeros_.end());
  }

  std::vector<double> cos_;
  std::vector<double> sin_;
  double sup_norm_ = 0.0;
  double lipschitz_ = 0.0;
  double g_bound_ = 0.0;
  bool is_even_ = true;
  std::vector<ForcingZero> zeros_;
};

inline double forcing_antiderivative(const ForcingProfile& forcing, double t) {
  return forcing.antiderivative(t);
}

/// Quantitative transversality data for the forcing.
struct TransversalityReport {
  std::vector<ForcingZero> zeros;
  double min_abs_slope = 0.0;
  /// Small-δ constant in mes{|g| < δ} ≤ L₃ δ, i.e. Σ_j 2/|g'(t_j)|.
  double l3_bound = 0.0;
  bool is_even = true;
};

/// Checks that every zero of g is simple (|g'| ≥ 1e-8); throws
/// DegenerateForcing otherwise, or when g vanishes identically.
inline TransversalityReport forcing_transversality_report(const ForcingProfile& forcing) {
  constexpr double kMinSlope = 1e-8;
  if (forcing.is_zero()) throw DegenerateForcing("forcing vanishes identically");
  TransversalityReport rep;
  rep.zeros = forcing.zeros();
  rep.is_even = forcing.is_even();
  rep.min_abs_slope = std::numeric_limits<double>::infinity();
  for (const auto& z : rep.zeros) {
    const double s = std::abs(z.slope);
    rep.min_abs_slope = std::min(rep.min_abs_slope, s);
    if (s < kMinSlope) {
      throw DegenerateForcing("forcing has a non-simple zero at t = " + std::to_string(z.t));
    }
    rep.l3_bound += 2.0 / s;
  }
  if (rep.zeros.empty()) rep.min_abs_slope = 0.0;
  return rep;
}

}  // namespace arnold
