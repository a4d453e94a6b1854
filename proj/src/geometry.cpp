#include "wlmc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wlmc/errors.hpp"
#include "wlmc/loopgen.hpp"

namespace wlmc::geometry {

namespace {

// Shared crossing predicate: shifted x exactly 0 belongs to the positive
// side, so a crossing needs exactly one strictly negative endpoint.
inline bool edge_crosses(double a, double b) { return (a < 0.0) != (b < 0.0); }

inline double crossing_height(double a, double b, double z0, double z1) {
  const double t = a / (a - b);
  return z0 + t * (z1 - z0);
}

}  // namespace

const std::string& kind_name(Kind kind) {
  static const std::string parallel = "parallel_plates";
  static const std::string perpendicular = "perpendicular_plates";
  return kind == Kind::ParallelPlates ? parallel : perpendicular;
}

Kind parse_kind(const std::string& name) {
  if (name == "parallel_plates") return Kind::ParallelPlates;
  if (name == "perpendicular_plates") return Kind::PerpendicularPlates;
  throw ValidationError("unknown geometry '" + name +
                        "' (expected parallel_plates or perpendicular_plates)");
}

double parallel_observable(const WorldlineLoop& loop) {
  return loopgen::extent(loop, Axis::Z);
}

double crossing_extent(const WorldlineLoop& loop, double xi) {
  const std::size_t n = loop.n_points();
  if (n == 0) return 0.0;
  double z_min = loop.z[0];
  double best = -std::numeric_limits<double>::infinity();
  bool crossed = false;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1 == n) ? 0 : i + 1;
    if (loop.z[i] < z_min) z_min = loop.z[i];
    const double a = loop.x[i] + xi;
    const double b = loop.x[j] + xi;
    if (edge_crosses(a, b)) {
      const double h = crossing_height(a, b, loop.z[i], loop.z[j]);
      if (!crossed || h > best) best = h;
      crossed = true;
    }
  }
  return crossed ? best - z_min : 0.0;
}

PerpendicularObservable perpendicular_observable(const WorldlineLoop& loop, std::size_t n_xi) {
  if (n_xi < 2) throw ValidationError("perpendicular_observable: n_xi must be at least 2");
  PerpendicularObservable obs;
  const std::size_t n = loop.n_points();
  if (n == 0) return obs;

  double x_min = loop.x[0], x_max = loop.x[0], z_min = loop.z[0];
  for (std::size_t i = 0; i < n; ++i) {
    x_min = std::min(x_min, loop.x[i]);
    x_max = std::max(x_max, loop.x[i]);
    z_min = std::min(z_min, loop.z[i]);
  }
  if (!(x_max > x_min)) return obs;  // zero x-extent: no offset admits a crossing

  const double dxi = (x_max - x_min) / static_cast<double>(n_xi);
  obs.dxi = dxi;
  obs.xi_first = -x_max + 0.5 * dxi;

  // Highest crossing per node. One pass over the edges: each edge can only
  // cross nodes inside [-max(x_i, x_j), -min(x_i, x_j)), so it touches
  // O(|x_i - x_j| / dxi) nodes. The window is widened by one node on each
  // side and the exact predicate re-checked there, which keeps every node
  // value bit-identical to crossing_extent at that offset.
  std::vector<double> best(n_xi, -std::numeric_limits<double>::infinity());
  const double inv_dxi = 1.0 / dxi;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1 == n) ? 0 : i + 1;
    const double lo = std::min(loop.x[i], loop.x[j]);
    const double hi = std::max(loop.x[i], loop.x[j]);
    // xi_node(k) in [-hi, -lo)  <=>  k in roughly [(x_max - hi), (x_max - lo)] / dxi - 1/2
    double k_lo = std::floor((x_max - hi) * inv_dxi - 0.5) - 1.0;
    double k_hi = std::ceil((x_max - lo) * inv_dxi - 0.5) + 1.0;
    if (k_hi < 0.0 || k_lo > static_cast<double>(n_xi - 1)) continue;
    const std::size_t first = k_lo < 0.0 ? 0 : static_cast<std::size_t>(k_lo);
    const std::size_t last =
        k_hi > static_cast<double>(n_xi - 1) ? n_xi - 1 : static_cast<std::size_t>(k_hi);
    for (std::size_t k = first; k <= last; ++k) {
      const double xi = obs.xi_node(k);
      const double a = loop.x[i] + xi;
      const double b = loop.x[j] + xi;
      if (!edge_crosses(a, b)) continue;
      const double h = crossing_height(a, b, loop.z[i], loop.z[j]);
      if (h > best[k]) best[k] = h;
    }
  }

  obs.extents.resize(n_xi);
  for (std::size_t k = 0; k < n_xi; ++k) {
    obs.extents[k] = std::isinf(best[k]) ? 0.0 : best[k] - z_min;
  }
  return obs;
}

PerLoopObservable reduce_loop(const WorldlineLoop& loop, const Config& config, std::size_t n_xi) {
  if (config.kind == Kind::ParallelPlates) {
    return ParallelObservable{parallel_observable(loop)};
  }
  return perpendicular_observable(loop, n_xi);
}

}  // namespace wlmc::geometry
