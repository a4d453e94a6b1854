#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace wlmc {

enum class Axis { X = 0, Y = 1, Z = 2 };

/// One closed unit-propertime worldline, stored as parallel coordinate
/// arrays. The polygon closes from the last point back to the first; no
/// duplicate endpoint is stored. Generated loops have their center of
/// mass at the origin.
struct WorldlineLoop {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;

  std::size_t n_points() const { return x.size(); }

  const std::vector<double>& coord(Axis axis) const {
    switch (axis) {
      case Axis::X: return x;
      case Axis::Y: return y;
      default: return z;
    }
  }

  void resize(std::size_t n) {
    x.resize(n);
    y.resize(n);
    z.resize(n);
  }
};

/// A seeded, reproducible collection of loops. Regenerating with the same
/// (seed, n_points, count, algorithm_id) yields bit-identical coordinates.
struct LoopEnsemble {
  std::vector<WorldlineLoop> loops;
  std::uint64_t n_points = 0;
  std::uint64_t seed = 0;
  std::string algorithm_id;
  std::uint32_t format_version = 1;

  std::size_t count() const { return loops.size(); }
};

}  // namespace wlmc
