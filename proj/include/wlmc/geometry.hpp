#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "wlmc/loop.hpp"

namespace wlmc::geometry {

/// The two supported plate configurations. For perpendicular plates the
/// convention is fixed: infinite plate = plane z = 0, half-plate =
/// {x = 0, z >= separation}; the separation itself only enters downstream
/// through dimensionless combinations.
enum class Kind { ParallelPlates, PerpendicularPlates };

struct Config {
  Kind kind = Kind::ParallelPlates;
};

const std::string& kind_name(Kind kind);
Kind parse_kind(const std::string& name);  // throws ValidationError

/// Parallel plates need a single number per loop: the z-extent.
struct ParallelObservable {
  double extent_z = 0.0;
};

/// Perpendicular plates need the crossing-extent profile l(xi) sampled on
/// midpoint nodes covering xi in [-x_max, -x_min] (the only offsets where
/// a crossing is possible). Node j sits at xi_first + j * dxi. A node value
/// of 0 encodes "no crossing there". Degenerate loops with zero x-extent
/// carry an empty profile.
struct PerpendicularObservable {
  double xi_first = 0.0;
  double dxi = 0.0;
  std::vector<double> extents;

  std::size_t n_nodes() const { return extents.size(); }
  double xi_node(std::size_t j) const { return xi_first + static_cast<double>(j) * dxi; }
};

using PerLoopObservable = std::variant<ParallelObservable, PerpendicularObservable>;

/// z-extent of the loop; the only geometric datum entering the
/// parallel-plate force.
double parallel_observable(const WorldlineLoop& loop);

/// Crossing extent l(xi) for the perpendicular configuration.
///
/// The loop, shifted by xi along x, pierces the half-plate plane x = 0
/// wherever an edge's shifted endpoints strictly change sign (a point
/// exactly at 0 counts as positive). Each such edge crosses at height
/// z* = z_i + t (z_{i+1} - z_i), t = (xi + x_i) / (x_i - x_{i+1}).
/// l(xi) = max z* - min_i z_i is the length of the z-offset interval on
/// which the loop reaches both surfaces, per unit sqrt(propertime);
/// returns 0 when no edge crosses.
double crossing_extent(const WorldlineLoop& loop, double xi);

/// l(xi) sampled at n_xi midpoint nodes. Node values agree bit-for-bit
/// with crossing_extent(loop, xi_node(j)).
PerpendicularObservable perpendicular_observable(const WorldlineLoop& loop, std::size_t n_xi);

PerLoopObservable reduce_loop(const WorldlineLoop& loop, const Config& config, std::size_t n_xi);

}  // namespace wlmc::geometry
