#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arnold/bessel.hpp"
#include "arnold/errors.hpp"
#include "arnold/flow.hpp"
#include "arnold/forcing.hpp"
#include "arnold/integrator.hpp"
#include "arnold/moebius.hpp"
#include "arnold/rotation.hpp"
#include "arnold/scan.hpp"
#include "arnold/tongue.hpp"
#include "arnold/verify.hpp"

namespace arnold {

using json = nlohmann::json;

/// Shortest text that is guaranteed to read back to the same double.
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(json& j, const ForcingProfile& g) {
  j = json{{"cos", g.cos_coeffs()}, {"sin", g.sin_coeffs()}};
}

inline void from_json(const json& j, ForcingProfile& g) {
  std::vector<double> c, s;
  if (j.contains("cos")) j.at("cos").get_to(c);
  if (j.contains("sin")) j.at("sin").get_to(s);
  g = ForcingProfile(std::move(c), std::move(s));
}

inline void to_json(json& j, const MoebiusMap& m) {
  j = json{{"m", {{m.m11, m.m12}, {m.m21, m.m22}}}, {"winding", m.winding}, {"det_drift", m.det_drift}};
}

inline void from_json(const json& j, MoebiusMap& m) {
  const auto& a = j.at("m");
  if (!a.is_array() || a.size() != 2 || a[0].size() != 2 || a[1].size() != 2) {
    throw InvalidArgument("MoebiusMap JSON needs a 2x2 \"m\" array");
  }
  m.m11 = a[0][0].get<double>();
  m.m12 = a[0][1].get<double>();
  m.m21 = a[1][0].get<double>();
  m.m22 = a[1][1].get<double>();
  m.winding = j.value("winding", std::int64_t{0});
  m.det_drift = j.value("det_drift", 0.0);
}

inline void to_json(json& j, const Params& p) {
  j = json{{"a", p.a}, {"b", p.b}, {"mu", p.mu}, {"gamma", p.gamma}};
}

inline void from_json(const json& j, Params& p) {
  p.a = j.value("a", p.a);
  p.b = j.value("b", p.b);
  p.mu = j.value("mu", p.mu);
  p.gamma = j.value("gamma", p.gamma);
}

inline void to_json(json& j, const IntegratorConfig& c) {
  j = json{{"rel_tol", c.rel_tol},   {"abs_tol", c.abs_tol},   {"max_step", c.max_step},
           {"min_step", c.min_step}, {"max_steps", c.max_steps}};
}

inline void from_json(const json& j, IntegratorConfig& c) {
  c.rel_tol = j.value("rel_tol", c.rel_tol);
  c.abs_tol = j.value("abs_tol", c.abs_tol);
  c.max_step = j.value("max_step", c.max_step);
  c.min_step = j.value("min_step", c.min_step);
  c.max_steps = j.value("max_steps", c.max_steps);
}

inline void to_json(json& j, const RotationNumber& r) {
  j = json{{"value", r.value},
           {"locked", r.locked},
           {"k", r.k},
           {"method", r.method == RhoMethod::moebius ? "moebius" : "iterated"}};
}

inline void to_json(json& j, const BoundaryPoint& p) {
  j = json{{"k", p.k},
           {"b", p.b},
           {"mu", p.mu},
           {"a0", p.a0},
           {"api", p.api},
           {"a_minus", p.a_minus},
           {"a_plus", p.a_plus},
           {"width", p.width},
           {"bessel_pred_0", p.bessel_pred_0},
           {"bessel_pred_pi", p.bessel_pred_pi},
           {"residual_0", p.residual_0},
           {"residual_pi", p.residual_pi},
           {"closed_form", p.closed_form}};
}

inline void to_json(json& j, const AdjacencyPoint& p) {
  j = json{{"k", p.k},
           {"mu", p.mu},
           {"b_star", p.b_star},
           {"a_star", p.a_star},
           {"identity_defect", p.identity_defect}};
}

inline void to_json(json& j, const BesselEval& e) {
  j = json{{"k", e.k}, {"z", e.z}, {"value", e.value}, {"route", to_string(e.route)}, {"est_err", e.est_err}};
}

inline void to_json(json& j, const ScanGrid& g) {
  j = json{{"a_min", g.a_min},     {"a_max", g.a_max}, {"a_steps", g.a_steps}, {"b_min", g.b_min},
           {"b_max", g.b_max},     {"b_steps", g.b_steps}, {"mu", g.mu},     {"k_min", g.k_min},
           {"k_max", g.k_max}};
}

inline void from_json(const json& j, ScanGrid& g) {
  g.a_min = j.value("a_min", g.a_min);
  g.a_max = j.value("a_max", g.a_max);
  g.a_steps = j.value("a_steps", g.a_steps);
  g.b_min = j.value("b_min", g.b_min);
  g.b_max = j.value("b_max", g.b_max);
  g.b_steps = j.value("b_steps", g.b_steps);
  g.mu = j.value("mu", g.mu);
  g.k_min = j.value("k_min", g.k_min);
  g.k_max = j.value("k_max", g.k_max);
}

inline void to_json(json& j, const ScanCell& c) {
  j = json{{"a", c.a}, {"b", c.b}, {"locked", c.locked}};
  if (c.failed) {
    j["rho"] = nullptr;
    j["error"] = c.error;
  } else {
    j["rho"] = c.rho;
  }
  j["k"] = c.locked ? json(c.k) : json(nullptr);
}

inline void to_json(json& j, const ResidualRecord& r) {
  j = json{{"which", r.which}, {"raw", r.raw}, {"scaled", r.scaled},
           {"pass", r.pass},   {"asserted", r.asserted}};
  json params = json::object();
  if (r.k) params["k"] = *r.k;
  if (r.a) params["a"] = *r.a;
  if (r.b) params["b"] = *r.b;
  if (r.mu) params["mu"] = *r.mu;
  j["params"] = params;
  if (!r.note.empty()) j["note"] = r.note;
}

inline void to_json(json& j, const TrendCheck& t) {
  j = json{{"name", t.name},
           {"bottom_median", t.windows.bottom_median},
           {"top_median", t.windows.top_median},
           {"bottom_count", t.windows.bottom_count},
           {"top_count", t.windows.top_count},
           {"factor", t.factor},
           {"pass", t.pass},
           {"grid", t.grid}};
  if (t.slope) j["slope"] = *t.slope;
  if (t.slope_window) j["slope_window"] = {t.slope_window->first, t.slope_window->second};
}

inline json report_json(const VerifyReport& rep) {
  json records = json::array();
  for (const auto& r : rep.records) records.push_back(r);
  json counts = json::object();
  for (const auto& r : rep.records) {
    auto& c = counts[r.which];
    if (c.is_null()) c = json{{"total", 0}, {"pass", 0}, {"asserted", 0}};
    c["total"] = c["total"].get<int>() + 1;
    if (r.pass) c["pass"] = c["pass"].get<int>() + 1;
    if (r.asserted) c["asserted"] = c["asserted"].get<int>() + 1;
  }
  json trends = json::array();
  for (const auto& t : rep.trends) trends.push_back(t);
  json summary{{"counts", counts},
               {"trends", trends},
               {"regime", {{"c1", rep.regime.c1}, {"c2", rep.regime.c2}}},
               {"grids",
                {{"mu", rep.plan.mu},
                 {"thm2_k", rep.plan.thm2_k},
                 {"thm2_b", {rep.plan.thm2_b_min, rep.plan.thm2_b_max}},
                 {"thm2_per_decade", rep.plan.thm2_per_decade},
                 {"thm1_k", rep.plan.thm1_k},
                 {"thm1_b", {rep.plan.thm1_b_min, rep.plan.thm1_b_max}},
                 {"thm1_per_decade", rep.plan.thm1_per_decade},
                 {"spacing_b", {rep.plan.spacing_b_min, rep.plan.spacing_b_max}},
                 {"line_mu", rep.plan.line_mu},
                 {"line_b", {rep.plan.line_b_min, rep.plan.line_b_max}},
                 {"lemma_draws", rep.plan.lemma_draws}}},
               {"constants_note", "the estimate constants have no known values; checks are trend-level"},
               {"all_pass", rep.all_pass()}};
  return json{{"records", records}, {"summary", summary}};
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kBoundaryCsvHeader =
    "k,b,mu,a0,api,a_minus,a_plus,width,bessel_pred_0,bessel_pred_pi,residual_0,residual_pi";

inline std::string boundary_csv(const std::vector<BoundaryPoint>& pts) {
  std::string out = std::string(kBoundaryCsvHeader) + "\n";
  for (const auto& p : pts) {
    out += std::to_string(p.k);
    for (double v : {p.b, p.mu, p.a0, p.api, p.a_minus, p.a_plus, p.width, p.bessel_pred_0,
                     p.bessel_pred_pi, p.residual_0, p.residual_pi}) {
      out += ',';
      out += fmt17(v);
    }
    out += '\n';
  }
  return out;
}

/// Inverse of boundary_csv (only the stored columns; closed_form is lost).
inline std::vector<BoundaryPoint> parse_boundary_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<BoundaryPoint> out;
  if (!std::getline(in, line) || line != kBoundaryCsvHeader) {
    throw InvalidArgument("boundary CSV header mismatch");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 12) throw InvalidArgument("boundary CSV row needs 12 fields");
    BoundaryPoint p;
    p.k = std::stoi(f[0]);
    double* dst[] = {&p.b,       &p.mu,    &p.a0,          &p.api,          &p.a_minus,    &p.a_plus,
                     &p.width,   &p.bessel_pred_0, &p.bessel_pred_pi, &p.residual_0, &p.residual_pi};
    for (std::size_t i = 0; i < 11; ++i) *dst[i] = std::stod(f[i + 1]);
    out.push_back(p);
  }
  return out;
}

inline constexpr const char* kScanCsvHeader = "a,b,mu,rho,locked,k";

/// Scan rows; k is empty for unlocked cells and rho is "nan" for failed ones.
inline std::string scan_csv(const ScanGrid& g, const std::vector<ScanCell>& cells) {
  std::string out = std::string(kScanCsvHeader) + "\n";
  for (const auto& c : cells) {
    out += fmt17(c.a) + ',' + fmt17(c.b) + ',' + fmt17(g.mu) + ',' +
           (c.failed ? std::string("nan") : fmt17(c.rho)) + ',' + (c.locked ? "1" : "0") + ',';
    if (c.locked) out += std::to_string(c.k);
    out += '\n';
  }
  return out;
}

/// Reads scan_csv output back into cells (grid geometry is not stored).
inline std::vector<ScanCell> parse_scan_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ScanCell> out;
  if (!std::getline(in, line) || line != kScanCsvHeader) throw InvalidArgument("scan CSV header mismatch");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() == 5) f.emplace_back();
    if (f.size() != 6) throw InvalidArgument("scan CSV row needs 6 fields");
    ScanCell c;
    c.a = std::stod(f[0]);
    c.b = std::stod(f[1]);
    if (f[3] == "nan") {
      c.failed = true;
      c.rho = NAN;
    } else {
      c.rho = std::stod(f[3]);
    }
    c.locked = f[4] == "1";
    if (!f[5].empty()) c.k = std::stoll(f[5]);
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  if (!out) throw InvalidArgument("write failed for " + path);
}

}  // namespace arnold
