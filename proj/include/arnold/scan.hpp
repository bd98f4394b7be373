#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "arnold/errors.hpp"
#include "arnold/flow.hpp"
#include "arnold/forcing.hpp"
#include "arnold/integrator.hpp"
#include "arnold/pool.hpp"
#include "arnold/rotation.hpp"

namespace arnold {

/// Rectangular (a, b) grid at fixed μ. Nodes include both ends.
struct ScanGrid {
  double a_min = -3.0;
  double a_max = 3.0;
  std::size_t a_steps = 300;
  double b_min = 0.0;
  double b_max = 4.0;
  std::size_t b_steps = 300;
  double mu = 0.4;
  /// Tongue labels drawn by the renderer.
  int k_min = -4;
  int k_max = 4;

  void validate() const {
    if (a_steps < 2 || b_steps < 2) throw InvalidArgument("scan grid needs at least 2 steps per axis");
    if (!(a_max > a_min) || !(b_max > b_min)) throw InvalidArgument("scan ranges must be non-degenerate");
    if (b_min < 0.0) throw InvalidArgument("scan expects b >= 0");
    if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
    if (k_max < k_min) throw InvalidArgument("empty k range");
  }
  double a_at(std::size_t i) const { return a_min + (a_max - a_min) * double(i) / double(a_steps - 1); }
  double b_at(std::size_t j) const { return b_min + (b_max - b_min) * double(j) / double(b_steps - 1); }
  std::size_t size() const { return a_steps * b_steps; }
};

/// One scan node. A failed evaluation leaves rho = NaN, locked = false and
/// the error message in `error`.
struct ScanCell {
  double a = 0.0;
  double b = 0.0;
  double rho = 0.0;
  bool locked = false;
  std::int64_t k = 0;
  bool failed = false;
  std::string error;
};

struct ScanOptions {
  ForcingProfile forcing = ForcingProfile::cosine();
  IntegratorConfig integrator{};
  double lock_tol = kLockTolerance;
  unsigned workers = 0;
};

/// ρ on every grid node, row-major with b as the outer index. The order is
/// fixed by the cell index, whatever the worker count.
inline std::vector<ScanCell> scan_plane(const ScanGrid& grid, const ScanOptions& opt = {}) {
  grid.validate();
  return parallel_map<ScanCell>(grid.size(), opt.workers, [&](std::size_t idx) {
    ScanCell c;
    c.a = grid.a_at(idx % grid.a_steps);
    c.b = grid.b_at(idx / grid.a_steps);
    try {
      const auto r = rotation_number(Params{c.a, c.b, grid.mu, 1.0}, opt.forcing, opt.integrator,
                                     opt.lock_tol);
      c.rho = r.value;
      c.locked = r.locked;
      c.k = r.k;
    } catch (const Error& e) {
      c.rho = std::numeric_limits<double>::quiet_NaN();
      c.failed = true;
      c.error = e.what();
    }
    return c;
  });
}

}  // namespace arnold
