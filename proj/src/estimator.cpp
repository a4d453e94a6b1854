#include "wlmc/estimator.hpp"

#include <cmath>

#include "wlmc/errors.hpp"
#include "wlmc/loopgen.hpp"
#include "wlmc/parallel.hpp"

namespace wlmc::estimator {

namespace {

struct BivariateMoments {
  std::size_t n = 0;
  double mean_x = 0.0, mean_y = 0.0;
  double m2_x = 0.0, m2_y = 0.0, m_xy = 0.0;

  void add(double x, double y) {
    ++n;
    const double inv_n = 1.0 / static_cast<double>(n);
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    mean_x += dx * inv_n;
    mean_y += dy * inv_n;
    m2_x += dx * (x - mean_x);
    m2_y += dy * (y - mean_y);
    m_xy += dx * (y - mean_y);
  }
};

}  // namespace

MCEstimate mean_stderr(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw ValidationError("mean_stderr: need at least 2 samples");
  }
  std::size_t n = 0;
  double mean = 0.0, m2 = 0.0;
  for (const double v : samples) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  const double var = m2 / static_cast<double>(n - 1);
  MCEstimate e;
  e.mean = mean;
  e.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  e.n_samples = n;
  return e;
}

MCEstimate paired_ratio(std::span<const double> numerator, std::span<const double> denominator) {
  if (numerator.size() != denominator.size()) {
    throw ValidationError("paired_ratio: sample lengths differ");
  }
  if (numerator.size() < 2) {
    throw ValidationError("paired_ratio: need at least 2 pairs");
  }
  BivariateMoments m;
  for (std::size_t i = 0; i < numerator.size(); ++i) m.add(numerator[i], denominator[i]);
  if (m.mean_y == 0.0) {
    throw ValidationError("paired_ratio: denominator mean is zero");
  }
  const double n = static_cast<double>(m.n);
  const double ratio = m.mean_x / m.mean_y;
  // First-order propagation of var(x_bar / y_bar) with the x-y covariance;
  // identical pairs cancel exactly and give zero spread.
  const double var_x = m.m2_x / (n - 1.0);
  const double var_y = m.m2_y / (n - 1.0);
  const double cov = m.m_xy / (n - 1.0);
  const double rel_var = var_x / (m.mean_x * m.mean_x) + var_y / (m.mean_y * m.mean_y) -
                         2.0 * cov / (m.mean_x * m.mean_y);
  MCEstimate e;
  e.mean = ratio;
  e.std_error = std::abs(ratio) * std::sqrt(std::max(rel_var, 0.0) / n);
  e.n_samples = m.n;
  return e;
}

ObservableSet compute_observables(const LoopEnsemble& ensemble, const geometry::Config& config,
                                  std::size_t n_xi, unsigned n_threads) {
  if (ensemble.count() == 0) throw ValidationError("compute_observables: empty ensemble");
  ObservableSet set;
  set.geometry = config;
  set.n_xi = n_xi;
  set.n_points = ensemble.n_points;
  set.seed = ensemble.seed;
  set.items.resize(ensemble.count());
  parallel_chunks(ensemble.count(), n_threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      set.items[k] = geometry::reduce_loop(ensemble.loops[k], config, n_xi);
    }
  });
  return set;
}

ObservableSet compute_observables_streamed(std::size_t count, std::size_t n_points,
                                           std::uint64_t seed, const geometry::Config& config,
                                           std::size_t n_xi, unsigned n_threads) {
  if (count == 0) throw ValidationError("compute_observables_streamed: count must be positive");
  ObservableSet set;
  set.geometry = config;
  set.n_xi = n_xi;
  set.n_points = n_points;
  set.seed = seed;
  set.items.resize(count);
  loopgen::stream_loops(count, n_points, seed, n_threads,
                        [&](std::size_t k, const WorldlineLoop& loop) {
                          set.items[k] = geometry::reduce_loop(loop, config, n_xi);
                        });
  return set;
}

std::vector<double> loop_integrands(const ObservableSet& set, const thermal::Params& params,
                                    unsigned n_threads) {
  params.validate();
  std::vector<double> values(set.count());
  parallel_chunks(set.count(), n_threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      values[k] = thermal::loop_integrand(set.items[k], params);
    }
  });
  return values;
}

namespace {

ForceResult assemble(const ObservableSet& set, double aT, std::span<const double> at_temperature,
                     std::span<const double> at_zero) {
  ForceResult result;
  result.kind = set.geometry.kind;
  result.aT = aT;
  result.ratio = paired_ratio(at_temperature, at_zero);
  MCEstimate coeff = mean_stderr(at_temperature);
  coeff.mean = -coeff.mean;
  result.coefficient = coeff;
  return result;
}

}  // namespace

ForceResult force_from_observables(const ObservableSet& set, const thermal::Params& params,
                                   unsigned n_threads) {
  const auto zero_params = thermal::Params::zero_temperature(params.trunc_eps);
  const auto x = loop_integrands(set, params, n_threads);
  const auto y = loop_integrands(set, zero_params, n_threads);
  return assemble(set, params.aT(), x, y);
}

ForceResult force_ratio(const LoopEnsemble& ensemble, const geometry::Config& config,
                        const thermal::Params& params, std::size_t n_xi, unsigned n_threads) {
  const auto set = compute_observables(ensemble, config, n_xi, n_threads);
  return force_from_observables(set, params, n_threads);
}

std::vector<ForceResult> sweep(const ObservableSet& set, std::span<const double> aT_values,
                               double trunc_eps, unsigned n_threads) {
  for (const double aT : aT_values) {
    if (!(aT >= 0.0)) throw ValidationError("sweep: aT values must be nonnegative");
  }
  const auto zero = loop_integrands(set, thermal::Params::zero_temperature(trunc_eps), n_threads);
  std::vector<ForceResult> results;
  results.reserve(aT_values.size());
  for (const double aT : aT_values) {
    const auto params = thermal::Params::from_aT(aT, trunc_eps);
    if (params.is_zero_temperature()) {
      results.push_back(assemble(set, aT, zero, zero));
    } else {
      const auto x = loop_integrands(set, params, n_threads);
      results.push_back(assemble(set, aT, x, zero));
    }
  }
  return results;
}

std::vector<ForceResult> sweep(const LoopEnsemble& ensemble, const geometry::Config& config,
                               std::span<const double> aT_values, std::size_t n_xi,
                               double trunc_eps, unsigned n_threads) {
  const auto set = compute_observables(ensemble, config, n_xi, n_threads);
  return sweep(set, aT_values, trunc_eps, n_threads);
}

}  // namespace wlmc::estimator
