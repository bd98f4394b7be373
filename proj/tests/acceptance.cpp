// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "arnold/arnold.hpp"

using namespace arnold;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome c1_autonomous() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ua(1.0, 5.0), um(0.3, 3.0);
  std::bernoulli_distribution sign(0.5);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    double a = ua(rng);
    if (a == 1.0) a = 5.0;
    if (sign(rng)) a = -a;
    const double mu = um(rng);
    const auto r = rotation_number({a, 0.0, mu, 1.0}, ForcingProfile::cosine());
    worst = std::max(worst, std::abs(r.value - autonomous_rho(a, mu)));
  }
  return {worst <= 1e-8, "max |rho - closed form| = " + fmt("%.3e", worst)};
}

Outcome c2_moebius() {
  // Draws cover the supported envelope: μ log-uniform on [0.05, 10], b
  // log-uniform on [0.01, 1000] plus b = 0, |a| ≤ 1 + b + 10μ.
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto cosf = ForcingProfile::cosine();
  double worst = 0.0, drift = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double mu = 0.05 * std::pow(200.0, u(rng));
    const double b = i == 0 ? 0.0 : 0.01 * std::pow(1e5, u(rng));
    const double amax = 1.0 + b + 10.0 * mu;
    const Params p{(2.0 * u(rng) - 1.0) * amax, b, mu, 1.0};
    const auto m = monodromy(p, cosf);
    drift = std::max(drift, m.det_drift);
    for (int j = 0; j < 20; ++j) {
      const double x0 = (2.0 * u(rng) - 1.0) * 10.0;
      const double direct = integrate_flow(p, cosf, x0, 0.0, kTwoPi).x1;
      worst = std::max(worst, std::abs(apply_lifted(m, x0) - direct));
    }
  }
  return {worst <= 1e-8 && drift <= 1e-9,
          "max endpoint diff = " + fmt("%.3e", worst) + ", max det drift = " + fmt("%.3e", drift)};
}

Outcome c3_fixed_points() {
  const auto cosf = ForcingProfile::cosine();
  const double mu = 0.4;
  double worst = 0.0;
  bool classes_ok = true;
  for (int k : {0, 1, 2})
    for (double b : {5.0, 20.0, 40.0}) {
      const auto bp = boundary_at(k, b, mu);
      for (auto [a, target] : {std::pair{bp.a0, 0.0}, std::pair{bp.api, kPi}}) {
        const auto m = monodromy({a, b, mu, 1.0}, cosf);
        const auto c = classify(m);
        if (c != MapClass::parabolic && c != MapClass::identity) classes_ok = false;
        const auto fp = fixed_points(m);
        if (c == MapClass::identity) continue;
        if (fp.points.size() != 1) {
          classes_ok = false;
          continue;
        }
        worst = std::max(worst, circle_distance(fp.points[0].x, target));
      }
    }
  return {classes_ok && worst <= 1e-6,
          std::string(classes_ok ? "all parabolic/identity" : "bad class") +
              ", max fixed-point offset = " + fmt("%.3e", worst)};
}

Outcome c4_thm2() {
  const auto grid = log_grid(20.0, 100.0, 12);
  bool pass = true;
  std::string d;
  for (int k : {0, 1, 2}) {
    const auto s = thm2_sweep(k, 0.4, grid, {}, 1);
    pass = pass && s.slope_check.pass && s.scaled_check.pass;
    d += "k=" + std::to_string(k) + " slope " + fmt("%.4f", *s.slope_check.slope) +
         (s.slope_check.pass ? "" : " (outside [-1.3,-0.7])") + ", scaled top/bottom " +
         fmt("%.3g", s.scaled_check.windows.top_median) + "/" +
         fmt("%.3g", s.scaled_check.windows.bottom_median) + "; ";
  }
  return {pass, d};
}

Outcome c5_spacing() {
  std::vector<AdjacencyPoint> found;
  const auto r = eq7_spacing_check(1, 0.4, 20.0, 60.0, {}, &found);
  return {r.pass, std::to_string(found.size()) + " adjacencies, worst gap deviation " +
                      fmt("%.4f", r.raw) + " (target pi*mu = " + fmt("%.4f", kPi * 0.4) + ")"};
}

Outcome c6_line() {
  bool pass = true;
  std::string d;
  for (int k : {0, 1}) {
    std::vector<AdjacencyPoint> found;
    const auto r = adjacency_line_check(k, 1.0, 5.0, 30.0, {}, &found);
    pass = pass && r.pass && !found.empty();
    d += "k=" + std::to_string(k) + ": " + std::to_string(found.size()) + " adjacencies, max |a*-k mu| " +
         fmt("%.2e", r.raw) + "; ";
  }
  return {pass, d};
}

Outcome c7_half_plateau() {
  const double b = 2.0, mu = 0.7;
  const auto cosf = ForcingProfile::cosine();
  auto rho = [&](double a) { return rotation_number({a, b, mu, 1.0}, cosf).value; };
  // Bracket ρ = 1/2 between the k = 0 and k = 1 tongues.
  double lo = 0.0, hi = 0.0;
  for (double a = 0.0; a <= 4.0; a += 0.05) {
    if (rho(a) < 0.5) lo = a;
    if (rho(a) > 0.5) {
      hi = a;
      break;
    }
  }
  if (!(hi > lo)) return {false, "no bracket for rho = 1/2"};
  // Left edge: sup{a : ρ < 1/2}; right edge: inf{a : ρ > 1/2}.
  auto edge = [&](std::function<bool(double)> below) {
    double l = lo, h = hi;
    for (int i = 0; i < 200 && h - l > 1e-15; ++i) {
      const double m = 0.5 * (l + h);
      (below(m) ? l : h) = m;
    }
    return 0.5 * (l + h);
  };
  const double left = edge([&](double a) { return rho(a) < 0.5; });
  const double right = edge([&](double a) { return !(rho(a) > 0.5); });
  const double a_half = 0.5 * (left + right);
  const double width = right - left;
  const double rm = rho(a_half - 1e-6), rp = rho(a_half + 1e-6);
  const bool pass = rm != 0.5 && rp != 0.5 && rm < 0.5 && rp > 0.5 && width <= 1e-10;
  return {pass, "a(1/2) = " + fmt("%.15f", a_half) + ", rho(a-1e-6) = " + fmt("%.12f", rm) +
                    ", rho(a+1e-6) = " + fmt("%.12f", rp) + ", plateau width = " + fmt("%.2e", width)};
}

Outcome c8_envelopes() {
  const double mu = 0.4;
  const auto grid = log_grid(20.0, 2000.0, 100);
  std::vector<ResidualRecord> t1, po;
  for (double b : grid) {
    t1.push_back(thm1_residual(1, b, mu));
    po.push_back(osc_integral_sup({mu, b, mu, 1.0}));
  }
  const auto a = scaled_trend("thm1", grid, t1, "");
  const auto c = scaled_trend("prop_osc", grid, po, "");
  double worst_t1 = 0.0;
  for (const auto& r : t1) worst_t1 = std::max(worst_t1, r.raw);
  return {a.pass && c.pass, "n = " + std::to_string(grid.size()) + "; thm1 max raw " + fmt("%.2e", worst_t1) +
                                ", top/bottom " + fmt("%.3g", a.windows.top_median) + "/" +
                                fmt("%.3g", a.windows.bottom_median) + "; osc top/bottom " +
                                fmt("%.3g", c.windows.top_median) + "/" + fmt("%.3g", c.windows.bottom_median)};
}

Outcome c9_bessel() {
  double dual = 0.0;
  for (int k = -4; k <= 5; ++k)
    for (int i = 0; i < 10; ++i) {
      const double z = -200.0 + 400.0 * (i + 0.37) / 10.0 + 0.11 * k;
      dual = std::max(dual, std::abs(bessel_j(k, z) - bessel_j_integral(k, z)));
    }
  const auto cosf = ForcingProfile::cosine();
  double red = 0.0;
  for (int k = -3; k <= 3; ++k)
    for (double z : {0.5, 6.0, 40.0, 150.0}) red = std::max(red, std::abs(gen_bessel(k, z, cosf) - bessel_j(k, -z)));
  // Next Hankel term bounds the scaled error: √(2/π)|4k² − 1|/8.
  bool bounded = true;
  double worst_scaled = 0.0;
  for (int k = 0; k <= 3; ++k) {
    const double bound = std::sqrt(2.0 / kPi) * std::abs(4.0 * k * k - 1.0) / 8.0;
    std::vector<double> zs, es;
    for (double z = 10.0; z <= 500.0; z *= 1.03) {
      const double e = std::abs(bessel_asymptotic(k, z) - bessel_j(k, -z)) * std::pow(z, 1.5);
      worst_scaled = std::max(worst_scaled, e);
      bounded = bounded && e <= 1.3 * bound + 0.2;
      zs.push_back(z);
      es.push_back(e);
    }
  }
  const ForcingProfile g({1.0, 0.2}, {});
  std::vector<double> zs, es;
  for (double z = 20.0; z <= 200.0; z *= 1.02) {
    zs.push_back(z);
    es.push_back(std::abs(gen_bessel_asymptotic(0, z, g) - gen_bessel(0, z, g)));
  }
  const auto w = trend_windows(zs, es);
  const bool vanishing = w.top_median < w.bottom_median;
  return {dual <= 1e-10 && red <= 1e-10 && bounded && vanishing,
          "dual " + fmt("%.2e", dual) + ", cos reduction " + fmt("%.2e", red) + ", max err*z^1.5 " +
              fmt("%.3f", worst_scaled) + ", stationary-phase error top/bottom " + fmt("%.3e", w.top_median) +
              "/" + fmt("%.3e", w.bottom_median)};
}

Outcome c10_figure() {
  ScanGrid g;  // 300×300, μ = 0.4, a ∈ [−3, 3], b ∈ [0, 4]
  const auto t0 = std::chrono::steady_clock::now();
  const auto cells = scan_plane(g);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::set<std::int64_t> bands;
  std::size_t failed = 0;
  for (const auto& c : cells) {
    if (c.failed) ++failed;
    if (c.locked) bands.insert(c.k);
  }
  bool all_k = true;
  for (int k = -4; k <= 4; ++k) all_k = all_k && bands.count(k);
  const double da = (g.a_max - g.a_min) / double(g.a_steps - 1);
  bool row0 = true;
  for (std::size_t i = 0; i < g.a_steps; ++i) {
    const auto& c = cells[i];
    if (std::abs(c.a) < 1.0 - da && !(c.locked && c.k == 0)) row0 = false;
    if (std::abs(c.a) > 1.0 + da && c.locked) row0 = false;
  }
  SvgInput in;
  in.grid = &g;
  in.cells = &cells;
  const bool rerender = render_svg(in) == render_svg(in);

  ScanGrid small;
  small.a_steps = small.b_steps = 20;
  const auto sc = scan_plane(small);
  SvgInput si;
  si.grid = &small;
  si.cells = &sc;
  std::ifstream f(std::string(ARNOLD_GOLDEN_DIR) + "/scan20.svg", std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  const bool golden = f.good() && render_svg(si) == ss.str();
  return {secs <= 300.0 && all_k && row0 && rerender && golden && failed == 0,
          "scan " + fmt("%.1f", secs) + " s, " + std::to_string(failed) + " failed cells, bands k=-4..4 " +
              (all_k ? "present" : "missing") + ", b=0 row " + (row0 ? "ok" : "wrong") + ", svg " +
              (rerender && golden ? "stable" : "unstable")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"1 autonomous closed form", c1_autonomous},   {"2 Moebius consistency", c2_moebius},
      {"3 boundary fixed points", c3_fixed_points},  {"4 boundary decay", c4_thm2},
      {"5 adjacency spacing", c5_spacing},           {"6 adjacency line", c6_line},
      {"7 no half-integer plateau", c7_half_plateau}, {"8 rho/oscillation envelopes", c8_envelopes},
      {"9 Bessel kit", c9_bessel},                   {"10 parameter-plane figure", c10_figure},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
