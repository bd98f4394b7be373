#include <catch_amalgamated.hpp>

#include <cmath>

#include "arnold/bessel.hpp"
#include "arnold/roots.hpp"

using namespace arnold;
using Catch::Approx;

TEST_CASE("values at zero", "[bessel]") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  for (int k : {-3, 1, 4}) CHECK(bessel_j(k, 0.0) == 0.0);
  CHECK(bessel_j_integral(0, 0.0) == Approx(1.0).margin(1e-15));
  CHECK(gen_bessel(0, 0.0, ForcingProfile({0.3, 1.0}, {0.2})) == Approx(1.0).margin(1e-15));
}

TEST_CASE("first zero of J0 located on the integral route", "[bessel]") {
  auto f = [](double z) { return -bessel_j_integral(0, z); };  // increasing near the zero
  const double z0 = brent_root(f, Bracket{2.0, 3.0, f(2.0), f(3.0)}, 1e-15);
  CHECK(z0 == Approx(2.404825557695773).margin(1e-10));
  CHECK(std::abs(bessel_j(0, 2.404825557695773)) <= 1e-10);
}

TEST_CASE("series/recurrence against quadrature", "[bessel]") {
  int n = 0;
  double worst = 0.0;
  for (int k = -4; k <= 5; ++k)
    for (int i = 0; i < 10; ++i) {
      const double z = -200.0 + 400.0 * (i + 0.37) / 10.0 + 0.11 * k;
      worst = std::max(worst, std::abs(bessel_j(k, z) - bessel_j_integral(k, z)));
      ++n;
    }
  CHECK(n == 100);
  CHECK(worst <= 1e-10);
  CHECK(bessel_j_eval(2, 3.0).route == BesselRoute::series);
  CHECK(bessel_j_eval(2, 30.0).route == BesselRoute::recurrence);
  CHECK(bessel_j_integral_eval(2, 30.0).route == BesselRoute::integral);
}

TEST_CASE("order parity", "[bessel]") {
  for (int k = 0; k <= 6; ++k)
    for (double z : {0.7, 8.0, 55.0}) {
      const double sign = (k % 2) ? -1.0 : 1.0;
      CHECK(bessel_j(-k, -z) == Approx(sign * bessel_j(k, -z)).margin(1e-10));
      CHECK(bessel_j_integral(-k, -z) == Approx(sign * bessel_j_integral(k, -z)).margin(1e-10));
    }
}

TEST_CASE("generalized function reduces to J_k for g = cos", "[bessel]") {
  const auto cosf = ForcingProfile::cosine();
  for (int k = -3; k <= 3; ++k)
    for (double z : {0.5, 6.0, 40.0, 150.0}) CHECK(gen_bessel(k, z, cosf) == Approx(bessel_j(k, -z)).margin(1e-10));
}

TEST_CASE("odd order against a second-harmonic forcing vanishes", "[bessel]") {
  // t ↦ t + π leaves G = sin(2t)/2 unchanged and flips cos t.
  const ForcingProfile c2({0.0, 1.0}, {});
  for (double z : {1.0, 17.0, 90.0}) CHECK(std::abs(gen_bessel(1, z, c2)) <= 1e-12);
}

TEST_CASE("large-argument leading term", "[bessel]") {
  CHECK_THROWS_AS(bessel_asymptotic(0, 4.9), DomainTooSmall);
  CHECK(std::abs(bessel_asymptotic(0, 100.0) - bessel_j(0, -100.0)) <= 1e-2);
  // The next Hankel term has size |4k² − 1|/(8z) relative to the leading one,
  // so the error times z^{3/2} stays below √(2/π)|4k² − 1|/8 up to
  // higher-order corrections.
  for (int k = 0; k <= 3; ++k) {
    const double bound = std::sqrt(2.0 / kPi) * std::abs(4.0 * k * k - 1.0) / 8.0;
    for (double z = 10.0; z <= 500.0; z *= 1.07) {
      const double e = std::abs(bessel_asymptotic(k, z) - bessel_j(k, -z)) * std::pow(z, 1.5);
      CHECK(e <= 1.3 * bound + 0.2);
    }
  }
}

TEST_CASE("extrema alternate in sign about pi apart", "[bessel]") {
  std::vector<double> ext;
  double prev = bessel_j(0, -50.0), prev2 = bessel_j(0, -(50.0 - 1e-3));
  for (double z = 50.0 + 1e-3; z < 70.0; z += 1e-3) {
    const double v = bessel_j(0, -z);
    if ((prev - prev2) * (v - prev) < 0.0) ext.push_back(z - 1e-3);
    prev2 = prev;
    prev = v;
  }
  REQUIRE(ext.size() >= 5);
  for (std::size_t i = 1; i < ext.size(); ++i) {
    CHECK(ext[i] - ext[i - 1] == Approx(kPi).margin(0.02));
    CHECK(bessel_j(0, -ext[i]) * bessel_j(0, -ext[i - 1]) < 0.0);
  }
}

TEST_CASE("stationary-phase sum for g = cos", "[bessel]") {
  const auto cosf = ForcingProfile::cosine();
  for (int k = -2; k <= 3; ++k)
    for (double z : {5.0, 12.5, 80.0, 400.0})
      CHECK(gen_bessel_asymptotic(k, z, cosf) == Approx(bessel_asymptotic(k, z)).margin(1e-12));
  CHECK_THROWS_AS(gen_bessel_asymptotic(0, 3.0, cosf), DomainTooSmall);
  CHECK_THROWS_AS(gen_bessel_asymptotic(0, 30.0, ForcingProfile({1.0, 1.0}, {})), DegenerateForcing);
}

TEST_CASE("stationary-phase error decays for a two-harmonic forcing", "[bessel]") {
  const ForcingProfile g({1.0, 0.2}, {});
  std::vector<double> lo, hi;
  for (double z = 20.0; z <= 200.0; z *= 1.05) {
    const double e = std::abs(gen_bessel_asymptotic(0, z, g) - gen_bessel(0, z, g)) * z;
    (z < 63.0 ? lo : hi).push_back(e);
  }
  auto mx = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  CHECK(mx(hi) < mx(lo));
  CHECK(mx(hi) < 0.5);
}

TEST_CASE("leading term near one of its zeros", "[bessel]") {
  // cos(−z + π/4) vanishes at z = 3π/4 + nπ.
  const double z0 = 0.75 * kPi + 10 * kPi;
  const auto cosf = ForcingProfile::cosine();
  CHECK(std::abs(gen_bessel_asymptotic(0, z0, cosf)) <= 1e-12);
  CHECK(std::abs(gen_bessel(0, z0, cosf)) <= 5e-3);
  for (double dz : {-0.3, 0.3}) {
    const double pred = gen_bessel_asymptotic(0, z0 + dz, cosf);
    const double quad = gen_bessel(0, z0 + dz, cosf);
    CHECK(pred * quad > 0.0);
  }
}
