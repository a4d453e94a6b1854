#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>

#include "wlmc/errors.hpp"
#include "wlmc/loop.hpp"
#include "wlmc/rng.hpp"

namespace wlmc::loopgen {

/// Tag recorded in ensemble headers; bumped whenever the construction or
/// the draw order changes, since stored streams are only reusable against
/// the exact algorithm that produced them.
inline constexpr std::string_view kAlgorithmId = "bridge-philox4x64-boxmuller-v1";

/// Builds one closed loop from a caller-supplied normal source
/// (anything with a `double next()`).
///
/// Construction: per dimension, a random walk of n_points increments of
/// variance 2/n_points; the walk is closed by removing the linear drift
/// (i/n_points) * total displacement, then recentred so the point average
/// is the zero vector. Point i carries propertime fraction i/n_points.
/// Dimensions are filled in x, y, z order, each consuming n_points draws.
template <typename NormalSource>
void generate_unit_loop_from(std::size_t n_points, NormalSource&& normals, WorldlineLoop& out) {
  if (n_points < 4) {
    throw ValidationError("generate_unit_loop: n_points must be at least 4");
  }
  out.resize(n_points);
  const double step_sigma = std::sqrt(2.0 / static_cast<double>(n_points));
  const double inv_n = 1.0 / static_cast<double>(n_points);
  for (auto* coords : {&out.x, &out.y, &out.z}) {
    auto& c = *coords;
    double walk = 0.0;
    for (std::size_t i = 0; i < n_points; ++i) {
      c[i] = walk;
      walk += step_sigma * normals.next();
    }
    // Drift removal: c[i] -= (i/n) * walk closes the polygon exactly at
    // index n (not stored). Compensated mean keeps the recentring residual
    // at rounding level even for n ~ 1e6.
    double mean = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n_points; ++i) {
      c[i] -= static_cast<double>(i) * inv_n * walk;
      const double t = c[i] - comp;
      const double s = mean + t;
      comp = (s - mean) - t;
      mean = s;
    }
    mean *= inv_n;
    for (std::size_t i = 0; i < n_points; ++i) c[i] -= mean;
  }
}

/// Loop k of an ensemble: the substream is keyed by (seed, k) alone.
void generate_unit_loop(std::size_t n_points, std::uint64_t seed, std::uint64_t loop_index,
                        WorldlineLoop& out);
WorldlineLoop generate_unit_loop(std::size_t n_points, std::uint64_t seed,
                                 std::uint64_t loop_index);

LoopEnsemble generate_ensemble(std::size_t count, std::size_t n_points, std::uint64_t seed);

/// max - min of one coordinate over the loop's points.
double extent(const WorldlineLoop& loop, Axis axis);

/// Streams the loops of a (count, n_points, seed) ensemble without holding
/// them all in memory. consume(k, loop) is invoked once per loop; calls for
/// distinct k may run concurrently on different workers, each with its own
/// loop buffer. consume must only touch per-k state.
template <typename Consumer>
void stream_loops(std::size_t count, std::size_t n_points, std::uint64_t seed,
                  unsigned n_threads, Consumer&& consume);

/// Binary ensemble serialization. Round trips are bit-exact.
void save_ensemble(const LoopEnsemble& ensemble, std::ostream& out);
LoopEnsemble load_ensemble(std::istream& in);

/// Generates the (count, n_points, seed) ensemble loop by loop and writes
/// it without holding more than one loop in memory. Byte-identical to
/// save_ensemble(generate_ensemble(...)).
void generate_and_save_ensemble(std::size_t count, std::size_t n_points, std::uint64_t seed,
                                std::ostream& out);

}  // namespace wlmc::loopgen

#include "wlmc/parallel.hpp"

namespace wlmc::loopgen {

template <typename Consumer>
void stream_loops(std::size_t count, std::size_t n_points, std::uint64_t seed,
                  unsigned n_threads, Consumer&& consume) {
  if (count < 1) throw ValidationError("stream_loops: count must be positive");
  if (n_points < 4) throw ValidationError("stream_loops: n_points must be at least 4");
  parallel_chunks(count, n_threads, [&](std::size_t begin, std::size_t end) {
    WorldlineLoop buffer;
    for (std::size_t k = begin; k < end; ++k) {
      generate_unit_loop(n_points, seed, k, buffer);
      consume(k, static_cast<const WorldlineLoop&>(buffer));
    }
  });
}

}  // namespace wlmc::loopgen
