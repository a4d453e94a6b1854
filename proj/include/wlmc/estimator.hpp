#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wlmc/geometry.hpp"
#include "wlmc/loop.hpp"
#include "wlmc/thermal.hpp"

namespace wlmc::estimator {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
};

/// One point of a force curve. `ratio` is F(T)/F(0) from paired per-loop
/// samples. `coefficient` is the dimensionless force in the convention
/// F * a^4 * 32 pi^2 / A (parallel) or F * a^3 * 32 pi^2 / L
/// (perpendicular); attractive forces are negative. Divide by 32 pi^2 for
/// the physical F a^4/A or F a^3/L.
struct ForceResult {
  geometry::Kind kind = geometry::Kind::ParallelPlates;
  double aT = 0.0;
  MCEstimate ratio;
  MCEstimate coefficient;
};

/// Mean and standard error via a single-pass Welford accumulation in
/// sample-index order, so the result is bit-reproducible under any worker
/// partitioning. Requires at least 2 samples.
MCEstimate mean_stderr(std::span<const double> samples);

/// Ratio of means of paired samples with the first-order delta-method
/// error, using the per-pair covariance. Identical pairs (the b = inf
/// case) give exactly ratio 1 with zero error.
MCEstimate paired_ratio(std::span<const double> numerator, std::span<const double> denominator);

/// Geometry reductions for a whole ensemble, computed once and reused
/// across every temperature of a sweep.
struct ObservableSet {
  geometry::Config geometry;
  std::size_t n_xi = 0;
  std::uint64_t n_points = 0;
  std::uint64_t seed = 0;
  std::vector<geometry::PerLoopObservable> items;

  std::size_t count() const { return items.size(); }
};

ObservableSet compute_observables(const LoopEnsemble& ensemble, const geometry::Config& config,
                                  std::size_t n_xi, unsigned n_threads = 1);

/// Same reductions, but loops are generated on the fly from (count,
/// n_points, seed) and never stored; memory stays at one loop per worker.
ObservableSet compute_observables_streamed(std::size_t count, std::size_t n_points,
                                           std::uint64_t seed, const geometry::Config& config,
                                           std::size_t n_xi, unsigned n_threads = 1);

/// Per-loop integrands at the given temperature, slot k per loop k.
std::vector<double> loop_integrands(const ObservableSet& set, const thermal::Params& params,
                                    unsigned n_threads = 1);

ForceResult force_from_observables(const ObservableSet& set, const thermal::Params& params,
                                   unsigned n_threads = 1);

ForceResult force_ratio(const LoopEnsemble& ensemble, const geometry::Config& config,
                        const thermal::Params& params, std::size_t n_xi, unsigned n_threads = 1);

/// One ForceResult per aT value (aT = 0 encodes zero temperature), all from
/// the same observables so points of a curve share their fluctuations.
std::vector<ForceResult> sweep(const ObservableSet& set, std::span<const double> aT_values,
                               double trunc_eps = 1e-14, unsigned n_threads = 1);

std::vector<ForceResult> sweep(const LoopEnsemble& ensemble, const geometry::Config& config,
                               std::span<const double> aT_values, std::size_t n_xi,
                               double trunc_eps = 1e-14, unsigned n_threads = 1);

}  // namespace wlmc::estimator
