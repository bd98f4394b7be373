#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "arnold/io.hpp"
#include "arnold/verify.hpp"

using namespace arnold;
using Catch::Approx;

TEST_CASE("trend helpers", "[verify]") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  const auto g = log_grid(10.0, 1000.0, 5);
  REQUIRE(g.size() == 11);
  CHECK(g.front() == Approx(10.0));
  CHECK(g.back() == Approx(1000.0));
  CHECK(g[5] == Approx(100.0));
  std::vector<double> y;
  for (double b : g) y.push_back(3.0 * std::pow(b, -1.25));
  CHECK(loglog_slope(g, y) == Approx(-1.25).margin(1e-12));

  const auto w = trend_windows(g, y);
  CHECK(w.bottom_count >= 1);
  CHECK(w.top_count >= 1);
  CHECK(w.top_median < w.bottom_median);
  CHECK(no_increasing_trend(w));
  std::vector<double> up;
  for (double b : g) up.push_back(b);
  CHECK_FALSE(no_increasing_trend(trend_windows(g, up)));
}

TEST_CASE("regime guard", "[verify]") {
  CHECK_THROWS_AS(thm1_residual(1, 0.0, 0.4), OutOfRegime);
  CHECK_THROWS_AS(thm1_residual(1, 2.0, 0.4), OutOfRegime);
  CHECK_THROWS_AS(thm2_residual(0, 1.0, 0.4), OutOfRegime);
  CHECK_THROWS_AS(osc_integral_sup({0.5, 0.0, 1.0, 1.0}), OutOfRegime);
  const RegimeConstants rc;
  CHECK(rc.admits(0.4, 20.0, 0.4));
  CHECK_FALSE(rc.admits(5.0, 20.0, 0.4));
}

TEST_CASE("rotation estimate at a = k mu", "[verify]") {
  for (int k : {0, 1}) {
    const auto r = thm1_residual(k, 40.0, 0.4);
    CHECK(r.raw <= 1e-12);
    CHECK(r.note == "locked");
    CHECK(r.scaled == Approx(r.raw * 4.0));
  }
}

TEST_CASE("boundary residual records", "[verify]") {
  BoundaryPoint bp;
  const auto [r0, rpi] = thm2_residual(1, 30.0, 0.4, {}, std::nullopt, &bp);
  CHECK(r0.raw == Approx(bp.residual_0 / 0.4));
  CHECK(rpi.raw == Approx(bp.residual_pi / 0.4));
  CHECK(r0.scaled == Approx(r0.raw * 30.0 / std::log(75.0)));
  CHECK(r0.a.value() == bp.a0);
}

TEST_CASE("oscillatory integral cross-check at gamma = 0", "[verify]") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ua(-3.0, 3.0), ub(0.0, 30.0), um(0.3, 2.0), ut(0.1, kTwoPi);
  const ForcingProfile two({1.0, 0.3}, {0.2});
  for (int i = 0; i < 20; ++i) {
    const Params p{ua(rng), ub(rng), um(rng), 0.0};
    const auto c = osc_gamma0_crosscheck(p, i % 2 ? two : ForcingProfile::cosine(), ua(rng), ut(rng));
    CHECK(c.diff <= 1e-9);
  }
  const auto r = osc_integral_sup({0.4, 40.0, 0.4, 1.0});
  CHECK(r.raw > 0.0);
  CHECK(r.scaled == Approx(r.raw * 10.0));
}

TEST_CASE("time average against space average", "[verify]") {
  const auto cosf = ForcingProfile::cosine();
  // ψ ≡ 1: both averages are 1.
  const auto one = avg_diff_check({3.0, 0.5, 1.0, 1.0}, cosf, 0.0, 1.0, [](double) { return 1.0; }, 1.0);
  CHECK(one.raw <= 1e-12);
  CHECK(one.pass);
  // Constant speed (γ = 0, no forcing): x is affine in t, so the averages agree.
  const auto flat = avg_diff_check({2.0, 0.0, 1.0, 0.0}, cosf, 0.3, 2.0,
                                   [](double x) { return std::sin(x) + 0.5; }, 1.5);
  CHECK(flat.raw <= 1e-10);
  CHECK(flat.pass);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(2.0, 5.0), ub(0.0, 1.0), um(0.3, 1.8), ut(0.0, kTwoPi),
      ul(0.2, 1.0);
  int tested = 0;
  for (int i = 0; i < 100; ++i) {
    const Params p{ua(rng), ub(rng), um(rng), 1.0};
    const double t0 = ut(rng), len = ul(rng);
    try {
      const auto r = avg_diff_check(p, cosf, t0, t0 + len, [](double x) { return std::cos(x); }, 1.0);
      CHECK(r.pass);
      ++tested;
    } catch (const SignChange&) {
    }
  }
  CHECK(tested >= 90);
  CHECK_THROWS_AS(avg_diff_check({0.0, 1.0, 1.0, 1.0}, cosf, 0.0, kTwoPi,
                                 [](double x) { return std::cos(x); }, 1.0),
                  SignChange);
}

TEST_CASE("adjacency line and spacing records", "[verify]") {
  std::vector<AdjacencyPoint> found;
  const auto r = adjacency_line_check(0, 1.0, 5.0, 15.0, {}, &found);
  CHECK(r.asserted);
  CHECK(r.pass);
  CHECK(found.size() >= 2);
  // k = 0 adjacencies sit on a = 0 at any μ.
  const auto r0 = adjacency_line_check(0, 0.4, 4.0, 8.0);
  CHECK_FALSE(r0.asserted);
  CHECK(r0.raw <= 1e-6);
  // Pinches of the k = 0 tongue approach the zeros of J_0(−b/μ) as b/μ grows;
  // at small b/μ they sit visibly above them.
  const double mu = 0.4;
  const double j0[] = {5.520078110286311, 8.653727912911013, 11.79153443901428, 14.93091770848779};
  const auto adj = find_adjacencies(0, 1.8, 6.5, mu);
  REQUIRE(adj.size() == 4);
  double prev_off = INFINITY;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    const double off = std::abs(adj[i].b_star / mu - j0[i]);
    CHECK(off < prev_off);
    CHECK(off < 1.0);
    prev_off = off;
  }
  const auto sp = eq7_spacing_check(1, mu, 20.0, 30.0);
  CHECK(sp.pass);
}

TEST_CASE("small verify run", "[verify]") {
  VerifyPlan plan;
  plan.thm2_k = {1};
  plan.thm2_b_max = 30.0;
  plan.thm1_b_max = 40.0;
  plan.thm1_per_decade = 10;
  plan.spacing_b_max = 24.0;
  plan.line_k = {0};
  plan.line_b_max = 10.0;
  plan.lemma_draws = 10;
  const auto rep = run_verify(plan);
  const auto j = report_json(rep);
  REQUIRE(j.contains("records"));
  REQUIRE(j.contains("summary"));
  CHECK(j["records"].size() == rep.records.size());
  CHECK(j["summary"]["all_pass"].get<bool>() == rep.all_pass());
  CHECK(j["summary"]["trends"].size() == rep.trends.size());
  for (const auto& r : rep.records)
    if (r.which == "lemma_avg") CHECK(r.pass);
}
