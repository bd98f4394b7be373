// arnold: rotation numbers, tongue boundaries and parameter-plane scans for
// dx/dt = (cos x + a + b g(t))/mu.
//
// Exit codes: 0 success, 1 usage error, 2 regime, bracket or integration
// failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arnold/arnold.hpp"
#include "arnold/io.hpp"

using namespace arnold;

namespace {

struct Flags {
  std::optional<double> a, b, mu, gamma, z, tol_a;
  std::optional<int> k;
  std::optional<double> a_min, a_max, b_min, b_max;
  std::optional<std::size_t> a_steps, b_steps;
  std::optional<unsigned> workers;
  std::optional<std::string> format;
  std::string config, out;
  std::string scan_csv;
  std::vector<std::string> boundary_csv;
  std::string method = "moebius";
  long periods = 1000;
  std::string route = "all";
};

// Settings after merging defaults, the config file and the flags (in that
// order of precedence, lowest first).
struct Settings {
  Params p{0.0, 0.0, 0.4, 1.0};
  int k = 1;
  double z = 10.0;
  double tol_a = 1e-12;
  ScanGrid grid{};
  double b_min = 20.0, b_max = 100.0;
  std::size_t b_steps = 81;
  unsigned workers = 0;
  std::string format;
  ForcingProfile forcing = ForcingProfile::cosine();
  IntegratorConfig integrator{};
  VerifyPlan plan{};
};

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key)) j.at(key).get_to(dst);
}

Settings merge(const Flags& f, const std::string& default_format) {
  Settings s;
  s.format = default_format;
  bool grid_b_set = false;
  if (!f.config.empty()) {
    const json j = json::parse(read_file(f.config));
    from_json(j, s.p);
    take(j, "k", s.k);
    take(j, "z", s.z);
    take(j, "tol_a", s.tol_a);
    take(j, "workers", s.workers);
    take(j, "format", s.format);
    take(j, "b_min", s.b_min);
    take(j, "b_max", s.b_max);
    take(j, "b_steps", s.b_steps);
    from_json(j, s.grid);
    grid_b_set = j.contains("b_min") || j.contains("b_max");
    if (j.contains("forcing")) j.at("forcing").get_to(s.forcing);
    if (j.contains("integrator")) j.at("integrator").get_to(s.integrator);
    if (j.contains("verify")) {
      const auto& v = j.at("verify");
      take(v, "mu", s.plan.mu);
      take(v, "thm2_k", s.plan.thm2_k);
      take(v, "thm2_b_min", s.plan.thm2_b_min);
      take(v, "thm2_b_max", s.plan.thm2_b_max);
      take(v, "thm2_per_decade", s.plan.thm2_per_decade);
      take(v, "thm1_k", s.plan.thm1_k);
      take(v, "thm1_b_min", s.plan.thm1_b_min);
      take(v, "thm1_b_max", s.plan.thm1_b_max);
      take(v, "thm1_per_decade", s.plan.thm1_per_decade);
      take(v, "spacing_k", s.plan.spacing_k);
      take(v, "spacing_b_min", s.plan.spacing_b_min);
      take(v, "spacing_b_max", s.plan.spacing_b_max);
      take(v, "line_mu", s.plan.line_mu);
      take(v, "line_k", s.plan.line_k);
      take(v, "line_b_min", s.plan.line_b_min);
      take(v, "line_b_max", s.plan.line_b_max);
      take(v, "lemma_draws", s.plan.lemma_draws);
    }
  }
  if (f.a) s.p.a = *f.a;
  if (f.b) s.p.b = *f.b;
  if (f.mu) s.p.mu = s.grid.mu = s.plan.mu = *f.mu;
  else s.grid.mu = s.p.mu;
  if (f.gamma) s.p.gamma = *f.gamma;
  if (f.k) s.k = *f.k;
  if (f.z) s.z = *f.z;
  if (f.tol_a) s.tol_a = *f.tol_a;
  if (f.workers) s.workers = *f.workers;
  if (f.format) s.format = *f.format;
  if (f.b_min) s.b_min = s.grid.b_min = *f.b_min;
  if (f.b_max) s.b_max = s.grid.b_max = *f.b_max;
  if (f.b_steps) s.b_steps = s.grid.b_steps = *f.b_steps;
  if (f.a_min) s.grid.a_min = *f.a_min;
  if (f.a_max) s.grid.a_max = *f.a_max;
  if (f.a_steps) s.grid.a_steps = *f.a_steps;
  if (!grid_b_set && !f.b_min && !f.b_max) {
    s.grid.b_min = 0.0;
    s.grid.b_max = 4.0;
  }
  s.plan.workers = s.workers;
  s.integrator.validate();
  return s;
}

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_file(f.out, text);
  }
}

void require_format(const Settings& s, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (s.format == a) return;
  throw InvalidArgument("format '" + s.format + "' is not available for this command");
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw InvalidArgument("need b_min < b_max and b_steps >= 2");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / double(n - 1);
  return g;
}

int cmd_rho(const Flags& f) {
  auto s = merge(f, "json");
  require_format(s, {"json", "csv"});
  RotationNumber r;
  json extra = json::object();
  if (f.method == "iterated") {
    r = rotation_number_iterated(s.p, s.forcing, f.periods, s.integrator);
    extra["periods"] = f.periods;
  } else if (f.method == "moebius") {
    const auto m = monodromy(s.p, s.forcing, s.integrator);
    r = rotation_number_of(m);
    extra["map"] = m;
    extra["class"] = to_string(classify(m));
  } else {
    throw InvalidArgument("method must be moebius or iterated");
  }
  if (s.format == "csv") {
    emit(f, std::string("a,b,mu,rho,locked,k\n") + fmt17(s.p.a) + "," + fmt17(s.p.b) + "," +
                fmt17(s.p.mu) + "," + fmt17(r.value) + "," + (r.locked ? "1" : "0") + "," +
                (r.locked ? std::to_string(r.k) : std::string()) + "\n");
  } else {
    json j{{"params", s.p}, {"rho", r}};
    j.update(extra);
    emit(f, j.dump(2));
  }
  return 0;
}

int cmd_boundary(const Flags& f) {
  auto s = merge(f, "csv");
  require_format(s, {"csv", "json", "svg"});
  TracerOptions opt;
  opt.forcing = s.forcing;
  opt.integrator = s.integrator;
  opt.tol_a = s.tol_a;
  const auto trace = trace_boundary(s.k, linear_grid(s.b_min, s.b_max, s.b_steps), s.p.mu, opt);
  for (const auto& fail : trace.failures)
    std::cerr << "boundary: b=" << fmt17(fail.b) << " failed: " << fail.message << "\n";
  if (s.format == "csv") {
    emit(f, boundary_csv(trace.points));
  } else if (s.format == "json") {
    json fails = json::array();
    for (const auto& x : trace.failures) fails.push_back({{"b", x.b}, {"error", x.message}});
    emit(f, json{{"points", trace.points}, {"failures", fails}}.dump(2));
  } else {
    SvgInput in;
    in.traces.push_back(trace.points);
    in.mu = s.p.mu;
    in.k_min = in.k_max = s.k;
    emit(f, render_svg(in));
  }
  return trace.failures.empty() ? 0 : 2;
}

int cmd_scan(const Flags& f) {
  auto s = merge(f, "csv");
  require_format(s, {"csv", "json", "svg"});
  ScanOptions opt;
  opt.forcing = s.forcing;
  opt.integrator = s.integrator;
  opt.workers = s.workers;
  const auto cells = scan_plane(s.grid, opt);
  std::size_t failed = 0;
  for (const auto& c : cells) failed += c.failed;
  if (failed) std::cerr << "scan: " << failed << " cells failed\n";
  if (s.format == "csv") {
    emit(f, scan_csv(s.grid, cells));
  } else if (s.format == "json") {
    emit(f, json{{"grid", s.grid}, {"cells", cells}}.dump(1));
  } else {
    SvgInput in;
    in.grid = &s.grid;
    in.cells = &cells;
    emit(f, render_svg(in));
  }
  return failed ? 2 : 0;
}

int cmd_adjacency(const Flags& f) {
  auto s = merge(f, "json");
  require_format(s, {"json", "csv"});
  AdjacencyOptions opt;
  opt.tracer.forcing = s.forcing;
  opt.tracer.integrator = s.integrator;
  opt.tracer.tol_a = s.tol_a;
  const auto adj = find_adjacencies(s.k, s.b_min, s.b_max, s.p.mu, opt);
  if (s.format == "csv") {
    std::string out = "k,mu,b_star,a_star,identity_defect\n";
    for (const auto& p : adj)
      out += std::to_string(p.k) + "," + fmt17(p.mu) + "," + fmt17(p.b_star) + "," +
             fmt17(p.a_star) + "," + fmt17(p.identity_defect) + "\n";
    emit(f, out);
  } else {
    emit(f, json(adj).dump(2));
  }
  return 0;
}

int cmd_bessel(const Flags& f) {
  auto s = merge(f, "json");
  require_format(s, {"json"});
  json j{{"k", s.k}, {"z", s.z}, {"forcing", s.forcing}};
  const bool classical = detail::is_plain_cosine(s.forcing);
  const bool all = f.route == "all";
  if (classical) {
    // Values are J_k(−z), the orientation used for tongue boundaries.
    if (all || f.route == "series") j["series"] = bessel_j_eval(s.k, -s.z);
    if (all || f.route == "integral") j["integral"] = bessel_j_integral_eval(s.k, -s.z);
    if ((all && s.z >= 5.0) || f.route == "asymptotic") j["asymptotic"] = bessel_asymptotic(s.k, s.z);
  } else {
    if (all || f.route == "integral") j["gen_bessel"] = gen_bessel(s.k, s.z, s.forcing);
    if ((all && s.z >= 5.0) || f.route == "asymptotic")
      j["gen_bessel_asymptotic"] = gen_bessel_asymptotic(s.k, s.z, s.forcing);
  }
  emit(f, j.dump(2));
  return 0;
}

int cmd_verify(const Flags& f) {
  auto s = merge(f, "json");
  require_format(s, {"json"});
  VerifyOptions opt;
  opt.forcing = s.forcing;
  opt.integrator = s.integrator;
  const auto rep = run_verify(s.plan, opt);
  for (const auto& t : rep.trends)
    std::cerr << (t.pass ? "PASS " : "FAIL ") << t.name << " [" << t.grid << "]\n";
  emit(f, report_json(rep).dump(2));
  return 0;
}

int cmd_render(const Flags& f) {
  auto s = merge(f, "svg");
  require_format(s, {"svg"});
  SvgInput in;
  std::vector<ScanCell> cells;
  if (!f.scan_csv.empty()) {
    cells = parse_scan_csv(read_file(f.scan_csv));
    if (cells.size() != s.grid.size()) {
      throw InvalidArgument("scan CSV has " + std::to_string(cells.size()) +
                            " cells; the grid flags describe " + std::to_string(s.grid.size()));
    }
    in.grid = &s.grid;
    in.cells = &cells;
  }
  int k_lo = s.k, k_hi = s.k;
  for (const auto& path : f.boundary_csv) {
    in.traces.push_back(parse_boundary_csv(read_file(path)));
    for (const auto& p : in.traces.back()) {
      k_lo = std::min(k_lo, p.k);
      k_hi = std::max(k_hi, p.k);
    }
  }
  in.mu = s.p.mu;
  in.k_min = k_lo;
  in.k_max = k_hi;
  emit(f, render_svg(in));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation numbers and Arnold tongues of dx/dt = (cos x + a + b g(t))/mu"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* c) {
    c->add_option("--config", f.config, "JSON config file; flags override it")->check(CLI::ExistingFile);
    c->add_option("--out", f.out, "Output file (default stdout)");
    c->add_option("--format", f.format, "csv | json | svg")->check(CLI::IsMember({"csv", "json", "svg"}));
    c->add_option("--mu", f.mu, "Time-scale parameter mu > 0");
    c->add_option("--workers", f.workers, "Worker threads (0 = hardware concurrency)");
  };

  auto* rho = app.add_subcommand("rho", "Rotation number at one (a, b, mu)");
  common(rho);
  rho->add_option("--a", f.a, "Drive offset");
  rho->add_option("--b", f.b, "Drive amplitude");
  rho->add_option("--gamma", f.gamma, "Weight of cos x (iterated method only for gamma != 1)");
  rho->add_option("--method", f.method, "moebius | iterated")->check(CLI::IsMember({"moebius", "iterated"}));
  rho->add_option("--periods", f.periods, "Periods for the iterated method");

  auto* boundary = app.add_subcommand("boundary", "Trace the k-th tongue boundaries over a b range");
  common(boundary);
  boundary->add_option("--k", f.k, "Tongue index");
  boundary->add_option("--b-min", f.b_min, "First amplitude");
  boundary->add_option("--b-max", f.b_max, "Last amplitude");
  boundary->add_option("--b-steps", f.b_steps, "Grid nodes (linear)");
  boundary->add_option("--tol-a", f.tol_a, "Root tolerance in a");

  auto* scan = app.add_subcommand("scan", "Rotation number over an (a, b) grid");
  common(scan);
  scan->add_option("--a-min", f.a_min);
  scan->add_option("--a-max", f.a_max);
  scan->add_option("--a-steps", f.a_steps);
  scan->add_option("--b-min", f.b_min);
  scan->add_option("--b-max", f.b_max);
  scan->add_option("--b-steps", f.b_steps);

  auto* adjacency = app.add_subcommand("adjacency", "Adjacency points of the k-th tongue");
  common(adjacency);
  adjacency->add_option("--k", f.k);
  adjacency->add_option("--b-min", f.b_min);
  adjacency->add_option("--b-max", f.b_max);
  adjacency->add_option("--tol-a", f.tol_a);

  auto* bessel = app.add_subcommand("bessel", "J_k(-z) (or the generalized form for a config forcing)");
  common(bessel);
  bessel->add_option("--k", f.k);
  bessel->add_option("--z", f.z, "Argument z (value reported at -z)");
  bessel->add_option("--route", f.route, "series | integral | asymptotic | all")
      ->check(CLI::IsMember({"series", "integral", "asymptotic", "all"}));

  auto* verify = app.add_subcommand("verify", "Residual and trend report as JSON");
  common(verify);

  auto* render = app.add_subcommand("render", "SVG from saved scan and boundary CSV files");
  common(render);
  render->add_option("--scan-csv", f.scan_csv, "Output of `scan --format csv`")->check(CLI::ExistingFile);
  render->add_option("--boundary-csv", f.boundary_csv, "Output of `boundary` (repeatable)")
      ->check(CLI::ExistingFile);
  render->add_option("--a-min", f.a_min);
  render->add_option("--a-max", f.a_max);
  render->add_option("--a-steps", f.a_steps);
  render->add_option("--b-min", f.b_min);
  render->add_option("--b-max", f.b_max);
  render->add_option("--b-steps", f.b_steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*rho) return cmd_rho(f);
    if (*boundary) return cmd_boundary(f);
    if (*scan) return cmd_scan(f);
    if (*adjacency) return cmd_adjacency(f);
    if (*bessel) return cmd_bessel(f);
    if (*verify) return cmd_verify(f);
    if (*render) return cmd_render(f);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
