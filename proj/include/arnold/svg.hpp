#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "arnold/errors.hpp"
#include "arnold/scan.hpp"
#include "arnold/tongue.hpp"

namespace arnold {

struct SvgStyle {
  double width = 720.0;
  double height = 480.0;
  double margin = 50.0;
  std::string locked_fill = "#c8c8c8";
  std::string boundary_stroke = "#000000";
  std::string bessel_stroke = "#1f4fa8";
  std::string line_stroke = "#808080";
  /// Bessel predictions are only drawn for b at or above this amplitude.
  double bessel_from_b = 0.0;
};

/// What to draw. Either part may be empty, but not both. The plot window is
/// the scan grid when there is one, otherwise the extent of the traces.
struct SvgInput {
  const ScanGrid* grid = nullptr;
  const std::vector<ScanCell>* cells = nullptr;
  std::vector<std::vector<BoundaryPoint>> traces;
  /// μ and k range for the dotted a = kμ lines; taken from the grid if set.
  double mu = 0.4;
  int k_min = 0;
  int k_max = -1;
};

namespace detail {

inline std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string fmt_tick(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Tick step from {1, 2, 5} × 10^n giving about `target` intervals.
inline double nice_step(double span, int target = 6) {
  const double raw = span / double(target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

struct Frame {
  double a0, a1, b0, b1;
  double px0, px1, py0, py1;
  double x(double a) const { return px0 + (a - a0) / (a1 - a0) * (px1 - px0); }
  double y(double b) const { return py0 - (b - b0) / (b1 - b0) * (py0 - py1); }
};

inline std::string polyline(const Frame& f, const std::vector<std::pair<double, double>>& ab,
                            const std::string& stroke, const std::string& dash) {
  std::string s = "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.2\"";
  if (!dash.empty()) s += " stroke-dasharray=\"" + dash + "\"";
  s += " points=\"";
  for (std::size_t i = 0; i < ab.size(); ++i) {
    if (i) s += ' ';
    s += fmt3(f.x(ab[i].first)) + "," + fmt3(f.y(ab[i].second));
  }
  return s + "\"/>\n";
}

}  // namespace detail

/// Deterministic SVG of a parameter-plane section: grey locked cells,
/// solid tongue boundaries, dashed Bessel predictions, dotted a = kμ lines
/// and ticked axes (a horizontal, b vertical).
inline std::string render_svg(const SvgInput& in, const SvgStyle& style = {}) {
  const bool have_scan = in.grid && in.cells && !in.cells->empty();
  bool have_traces = false;
  for (const auto& t : in.traces) have_traces = have_traces || !t.empty();
  if (!have_scan && !have_traces) throw InvalidArgument("render_svg needs a scan or a boundary trace");

  double mu = in.mu;
  int k_min = in.k_min, k_max = in.k_max;
  detail::Frame f{};
  if (have_scan) {
    in.grid->validate();
    if (in.cells->size() != in.grid->size()) throw InvalidArgument("cell count does not match the grid");
    mu = in.grid->mu;
    k_min = in.grid->k_min;
    k_max = in.grid->k_max;
    f.a0 = in.grid->a_min;
    f.a1 = in.grid->a_max;
    f.b0 = in.grid->b_min;
    f.b1 = in.grid->b_max;
  } else {
    f.a0 = f.b0 = INFINITY;
    f.a1 = f.b1 = -INFINITY;
    for (const auto& t : in.traces)
      for (const auto& p : t) {
        f.a0 = std::min({f.a0, p.a_minus, p.bessel_pred_0, p.bessel_pred_pi});
        f.a1 = std::max({f.a1, p.a_plus, p.bessel_pred_0, p.bessel_pred_pi});
        f.b0 = std::min(f.b0, p.b);
        f.b1 = std::max(f.b1, p.b);
      }
    if (!(f.a1 > f.a0)) f.a1 = f.a0 + 1.0;
    if (!(f.b1 > f.b0)) f.b1 = f.b0 + 1.0;
  }
  f.px0 = style.margin;
  f.px1 = style.width - style.margin / 2.0;
  f.py0 = style.height - style.margin;
  f.py1 = style.margin / 2.0;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt3(style.width) +
         "\" height=\"" + detail::fmt3(style.height) + "\" viewBox=\"0 0 " +
         detail::fmt3(style.width) + " " + detail::fmt3(style.height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + detail::fmt3(style.width) + "\" height=\"" +
         detail::fmt3(style.height) + "\" fill=\"#ffffff\"/>\n";
  out += "<defs><clipPath id=\"plot\"><rect x=\"" + detail::fmt3(f.px0) + "\" y=\"" +
         detail::fmt3(f.py1) + "\" width=\"" + detail::fmt3(f.px1 - f.px0) + "\" height=\"" +
         detail::fmt3(f.py0 - f.py1) + "\"/></clipPath></defs>\n";
  out += "<g clip-path=\"url(#plot)\">\n";

  if (have_scan) {
    // Each node owns a cell of one grid spacing centred on it; runs of locked
    // cells along a row are merged into one rectangle.
    const auto& g = *in.grid;
    const double da = (g.a_max - g.a_min) / double(g.a_steps - 1);
    const double db = (g.b_max - g.b_min) / double(g.b_steps - 1);
    out += "<g fill=\"" + style.locked_fill + "\" stroke=\"none\">\n";
    for (std::size_t j = 0; j < g.b_steps; ++j) {
      std::size_t i = 0;
      while (i < g.a_steps) {
        const auto& c = (*in.cells)[j * g.a_steps + i];
        if (!c.locked) {
          ++i;
          continue;
        }
        std::size_t e = i;
        while (e + 1 < g.a_steps && (*in.cells)[j * g.a_steps + e + 1].locked) ++e;
        const double xa = f.x(g.a_at(i) - 0.5 * da), xb = f.x(g.a_at(e) + 0.5 * da);
        const double yt = f.y(g.b_at(j) + 0.5 * db), yb = f.y(g.b_at(j) - 0.5 * db);
        out += "<rect x=\"" + detail::fmt3(xa) + "\" y=\"" + detail::fmt3(yt) + "\" width=\"" +
               detail::fmt3(xb - xa) + "\" height=\"" + detail::fmt3(yb - yt) + "\"/>\n";
        i = e + 1;
      }
    }
    out += "</g>\n";
  }

  for (int k = k_min; k <= k_max; ++k) {
    const double a = k * mu;
    if (a < f.a0 || a > f.a1) continue;
    out += "<line x1=\"" + detail::fmt3(f.x(a)) + "\" y1=\"" + detail::fmt3(f.py0) + "\" x2=\"" +
           detail::fmt3(f.x(a)) + "\" y2=\"" + detail::fmt3(f.py1) + "\" stroke=\"" +
           style.line_stroke + "\" stroke-width=\"0.8\" stroke-dasharray=\"1,3\"/>\n";
  }

  for (const auto& t : in.traces) {
    if (t.empty()) continue;
    std::vector<std::pair<double, double>> s0, spi, p0, ppi;
    for (const auto& p : t) {
      s0.emplace_back(p.a0, p.b);
      spi.emplace_back(p.api, p.b);
      if (p.b >= style.bessel_from_b) {
        p0.emplace_back(p.bessel_pred_0, p.b);
        ppi.emplace_back(p.bessel_pred_pi, p.b);
      }
    }
    out += detail::polyline(f, s0, style.boundary_stroke, "");
    out += detail::polyline(f, spi, style.boundary_stroke, "");
    if (p0.size() > 1) {
      out += detail::polyline(f, p0, style.bessel_stroke, "5,3");
      out += detail::polyline(f, ppi, style.bessel_stroke, "5,3");
    }
  }
  out += "</g>\n";

  // Axes.
  out += "<g stroke=\"#000000\" stroke-width=\"1\" fill=\"none\">\n";
  out += "<rect x=\"" + detail::fmt3(f.px0) + "\" y=\"" + detail::fmt3(f.py1) + "\" width=\"" +
         detail::fmt3(f.px1 - f.px0) + "\" height=\"" + detail::fmt3(f.py0 - f.py1) + "\"/>\n";
  std::string labels;
  const double sa = detail::nice_step(f.a1 - f.a0);
  for (long i = long(std::ceil(f.a0 / sa - 1e-9)); i * sa <= f.a1 + 1e-9 * sa; ++i) {
    const double v = double(i) * sa;
    const double x = f.x(v);
    out += "<line x1=\"" + detail::fmt3(x) + "\" y1=\"" + detail::fmt3(f.py0) + "\" x2=\"" +
           detail::fmt3(x) + "\" y2=\"" + detail::fmt3(f.py0 + 5.0) + "\"/>\n";
    labels += "<text x=\"" + detail::fmt3(x) + "\" y=\"" + detail::fmt3(f.py0 + 18.0) +
              "\" text-anchor=\"middle\">" + detail::fmt_tick(v) + "</text>\n";
  }
  const double sb = detail::nice_step(f.b1 - f.b0);
  for (long i = long(std::ceil(f.b0 / sb - 1e-9)); i * sb <= f.b1 + 1e-9 * sb; ++i) {
    const double v = double(i) * sb;
    const double y = f.y(v);
    out += "<line x1=\"" + detail::fmt3(f.px0 - 5.0) + "\" y1=\"" + detail::fmt3(y) + "\" x2=\"" +
           detail::fmt3(f.px0) + "\" y2=\"" + detail::fmt3(y) + "\"/>\n";
    labels += "<text x=\"" + detail::fmt3(f.px0 - 8.0) + "\" y=\"" + detail::fmt3(y + 4.0) +
              "\" text-anchor=\"end\">" + detail::fmt_tick(v) + "</text>\n";
  }
  out += "</g>\n";
  out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#000000\">\n" + labels;
  out += "<text x=\"" + detail::fmt3(0.5 * (f.px0 + f.px1)) + "\" y=\"" +
         detail::fmt3(style.height - 8.0) + "\" text-anchor=\"middle\">a</text>\n";
  out += "<text x=\"12\" y=\"" + detail::fmt3(0.5 * (f.py0 + f.py1)) +
         "\" text-anchor=\"middle\">b</text>\n";
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace arnold
