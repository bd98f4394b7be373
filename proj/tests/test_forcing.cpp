#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "arnold/forcing.hpp"

using namespace arnold;
using Catch::Approx;

TEST_CASE("antiderivative of simple profiles", "[forcing]") {
  const auto c = ForcingProfile::cosine();
  CHECK(forcing_antiderivative(c, kPi / 2) == Approx(1.0).margin(1e-15));
  const ForcingProfile c2({0.0, 1.0}, {});
  CHECK(forcing_antiderivative(c2, kPi / 4) == Approx(0.5).margin(1e-15));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ForcingProfile g({u(rng), u(rng), u(rng)}, {u(rng), u(rng)});
    CHECK(g.antiderivative(0.0) == 0.0);
    CHECK(std::abs(g.antiderivative(kTwoPi)) <= 1e-14);
    // G' = g by central differences.
    for (double t : {0.3, 1.7, 4.4}) {
      const double h = 1e-5;
      const double fd = (g.antiderivative(t + h) - g.antiderivative(t - h)) / (2 * h);
      CHECK(fd == Approx(g(t)).margin(1e-8));
    }
  }
}

TEST_CASE("bounds dominate sampled values", "[forcing]") {
  const ForcingProfile g({0.7, -0.2, 0.05}, {0.3, 0.0, -0.1});
  double gmax = 0, dmax = 0, Gmax = 0;
  for (int i = 0; i < 20000; ++i) {
    const double t = kTwoPi * i / 20000.0;
    gmax = std::max(gmax, std::abs(g(t)));
    dmax = std::max(dmax, std::abs(g.derivative(t)));
    Gmax = std::max(Gmax, std::abs(g.antiderivative(t)));
  }
  CHECK(gmax <= g.sup_norm());
  CHECK(dmax <= g.lipschitz());
  CHECK(Gmax <= g.antiderivative_bound());
  CHECK_FALSE(g.is_even());
}

TEST_CASE("zeros of cos", "[forcing]") {
  const auto rep = forcing_transversality_report(ForcingProfile::cosine());
  REQUIRE(rep.zeros.size() == 2);
  CHECK(rep.zeros[0].t == Approx(kPi / 2).margin(1e-14));
  CHECK(rep.zeros[1].t == Approx(3 * kPi / 2).margin(1e-14));
  CHECK(rep.zeros[0].slope == Approx(-1.0).margin(1e-14));
  CHECK(rep.zeros[1].slope == Approx(1.0).margin(1e-14));
  CHECK(rep.is_even);
  CHECK(rep.min_abs_slope == Approx(1.0));
  CHECK(rep.l3_bound == Approx(4.0));
}

TEST_CASE("zeros of cos t + 0.1 cos 2t against the quadratic in cos t", "[forcing]") {
  // cos t + 0.1 (2 cos² t − 1) = 0  ⇔  0.2 c² + c − 0.1 = 0.
  const double c = (-1.0 + std::sqrt(1.0 + 4 * 0.2 * 0.1)) / (2 * 0.2);
  const double t1 = std::acos(c), t2 = kTwoPi - t1;
  const ForcingProfile g({1.0, 0.1}, {});
  const auto rep = forcing_transversality_report(g);
  REQUIRE(rep.zeros.size() == 2);
  CHECK(rep.zeros[0].t == Approx(t1).margin(1e-13));
  CHECK(rep.zeros[1].t == Approx(t2).margin(1e-13));
  for (const auto& z : rep.zeros) {
    CHECK(std::abs(g(z.t)) <= 1e-12);
    CHECK(z.slope == Approx(-std::sin(z.t) - 0.2 * std::sin(2 * z.t)).margin(1e-13));
    CHECK(std::abs(z.slope) > 1e-8);
  }
  CHECK(rep.is_even);
}

TEST_CASE("constant term is dropped", "[forcing]") {
  // 1 − cos t loses its mean and becomes −cos t.
  const auto g = ForcingProfile::with_mean_removed(1.0, {-1.0}, {});
  CHECK(g(0.0) == Approx(-1.0));
  const auto rep = forcing_transversality_report(g);
  REQUIRE(rep.zeros.size() == 2);
  CHECK(rep.zeros[0].slope == Approx(1.0));
}

TEST_CASE("degenerate forcing is rejected", "[forcing]") {
  CHECK_THROWS_AS(forcing_transversality_report(ForcingProfile{}), DegenerateForcing);
  // cos t + cos 2t has a double zero at t = π.
  CHECK_THROWS_AS(forcing_transversality_report(ForcingProfile({1.0, 1.0}, {})), DegenerateForcing);
  CHECK_THROWS_AS(ForcingProfile({NAN}, {}), InvalidArgument);
}

TEST_CASE("odd forcing zeros", "[forcing]") {
  const ForcingProfile s({}, {1.0});
  const auto rep = forcing_transversality_report(s);
  REQUIRE(rep.zeros.size() == 2);
  CHECK(rep.zeros[0].t == Approx(0.0).margin(1e-14));
  CHECK(rep.zeros[1].t == Approx(kPi).margin(1e-14));
  CHECK_FALSE(rep.is_even);
}
