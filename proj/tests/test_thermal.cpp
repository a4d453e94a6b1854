#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "wlmc/errors.hpp"
#include "wlmc/geometry.hpp"
#include "wlmc/loopgen.hpp"
#include "wlmc/thermal.hpp"

using wlmc::ValidationError;
namespace thermal = wlmc::thermal;
namespace geometry = wlmc::geometry;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kZeta4 = 1.0823232337111381916;
constexpr double kSqrtPi = 1.7724538509055160273;

// Winding-summed propertime integrals by brute force: quadrature for the
// first windings, then an elementary numeric sum over the distant windings
// where the finite lower propertime bound is invisible (the integrals
// there equal Gamma(2)/c^2 and Gamma(3/2)/c^{3/2} to far below the
// comparison tolerance).
constexpr int kQuadWindings = 600;

double kernel_parallel_oracle(double l, double b) {
  long double total = 0.5L * std::pow(static_cast<long double>(l), 4);
  for (int n = 1; n <= kQuadWindings; ++n) {
    const double c = 0.25 * b * b * n * n;
    total += 2.0L * oracles::propertime_integral_parallel(c, l, 200);
  }
  long double tail = 0.0L;
  for (long long n = 2000000; n > kQuadWindings; --n) {
    const long double c = 0.25L * b * b * static_cast<long double>(n) * n;
    tail += 1.0L / (c * c);
  }
  return static_cast<double>(total + 2.0L * tail);
}

double kernel_perpendicular_oracle(double l, double b) {
  long double total = (2.0L / 3.0L) * std::pow(static_cast<long double>(l), 3);
  for (int n = 1; n <= kQuadWindings; ++n) {
    const double c = 0.25 * b * b * n * n;
    total += 2.0L * oracles::propertime_integral_perpendicular(c, l, 200);
  }
  const long double gamma32 = 0.88622692545275801365L;
  long double tail = 0.0L;
  for (long long n = 2000000; n > kQuadWindings; --n) {
    const long double c = 0.25L * b * b * static_cast<long double>(n) * n;
    tail += gamma32 / (c * std::sqrt(c));
  }
  return static_cast<double>(total + 2.0L * tail);
}

}  // namespace

TEST_CASE("thermal parameters validate") {
  CHECK_THROWS_AS(thermal::Params::from_aT(-0.1), ValidationError);
  CHECK_THROWS_AS(thermal::Params::from_aT(0.5, 1e-3), ValidationError);
  CHECK_THROWS_AS(thermal::Params::from_aT(0.5, 0.0), ValidationError);
  thermal::Params bad;
  bad.b = -2.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  const auto zero = thermal::Params::from_aT(0.0);
  CHECK(zero.is_zero_temperature());
  CHECK(zero.aT() == 0.0);
  const auto warm = thermal::Params::from_aT(0.25);
  CHECK(warm.b == doctest::Approx(4.0));
}

TEST_CASE("winding sum basics") {
  CHECK(thermal::winding_sum(kInf) == 1.0);
  CHECK_THROWS_AS(thermal::winding_sum(0.0), ValidationError);
  CHECK_THROWS_AS(thermal::winding_sum(-1.0), ValidationError);
  // frozen from the long-double brute-force sum
  CHECK(thermal::winding_sum(1.0) == doctest::Approx(1.7726372048266526).epsilon(1e-13));
  CHECK(static_cast<double>(oracles::winding_sum_brute(1.0L)) ==
        doctest::Approx(1.7726372048266526).epsilon(1e-14));
}

TEST_CASE("winding sum matches brute force across the modular switch") {
  for (const double c : {0.01, 0.1, 0.5, 0.99, 1.0, 1.01, 2.0, 10.0, 50.0}) {
    const double expected = static_cast<double>(oracles::winding_sum_brute(c));
    CHECK(thermal::winding_sum(c) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("modular identity holds to 1e-12") {
  for (const double c : {0.1, 1.0, 10.0}) {
    const double lhs = thermal::winding_sum(c);
    const double rhs = std::sqrt(oracles::kPi / c) * thermal::winding_sum(oracles::kPi * oracles::kPi / c);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
    // same identity through the independent accumulation
    const long double blhs = oracles::winding_sum_brute(c);
    const long double brhs = std::sqrt((long double)oracles::kPi / c) *
                             oracles::winding_sum_brute((long double)oracles::kPi * oracles::kPi / c);
    CHECK(std::abs(static_cast<double>(blhs - brhs)) <= 1e-12 * static_cast<double>(blhs));
  }
}

TEST_CASE("closed-form propertime tails match quadrature to 1e-10") {
  for (const double l : {0.5, 1.0, 2.0, 4.0}) {
    for (const double c : {0.01, 1.0, 100.0}) {
      const double g3 = thermal::propertime_tail_parallel(c, l);
      const double g3_ref = static_cast<double>(oracles::propertime_integral_parallel(c, l));
      CHECK(g3 == doctest::Approx(g3_ref).epsilon(1e-10));

      const double g52 = thermal::propertime_tail_perpendicular(c, l);
      const double g52_ref =
          static_cast<double>(oracles::propertime_integral_perpendicular(c, l));
      CHECK(g52 == doctest::Approx(g52_ref).epsilon(1e-10));
    }
  }
  // both sides of the series switch points
  for (const double x : {0.99, 1.01}) {
    const double c = 2.0;
    const double l = std::sqrt(x / c);
    CHECK(thermal::propertime_tail_parallel(c, l) ==
          doctest::Approx(static_cast<double>(oracles::propertime_integral_parallel(c, l)))
              .epsilon(1e-12));
    CHECK(thermal::propertime_tail_perpendicular(c, l) ==
          doctest::Approx(static_cast<double>(oracles::propertime_integral_perpendicular(c, l)))
              .epsilon(1e-12));
  }
}

TEST_CASE("zero-temperature kernel limits are exact") {
  const auto zero = thermal::Params::zero_temperature();
  for (const double l : {0.1, 0.7, 1.9}) {
    CHECK(thermal::kernel_parallel(l, zero) == 0.5 * l * l * l * l);
    CHECK(thermal::kernel_perpendicular(l, zero) == (2.0 / 3.0) * l * l * l);
  }
  CHECK(thermal::kernel_parallel(0.0, thermal::Params::from_aT(0.5)) == 0.0);
  CHECK(thermal::kernel_perpendicular(0.0, thermal::Params::from_aT(0.5)) == 0.0);
  CHECK_THROWS_AS(thermal::kernel_parallel(-1.0, zero), ValidationError);
}

TEST_CASE("kernels match winding-by-winding quadrature") {
  const auto params = thermal::Params::from_aT(0.5);  // b = 2
  CHECK(thermal::kernel_parallel(1.0, params) ==
        doctest::Approx(kernel_parallel_oracle(1.0, 2.0)).epsilon(2e-10));
  CHECK(thermal::kernel_perpendicular(1.0, params) ==
        doctest::Approx(kernel_perpendicular_oracle(1.0, 2.0)).epsilon(2e-10));
  // frozen values from the oracles
  CHECK(thermal::kernel_parallel(1.0, params) ==
        doctest::Approx(1.1816509419272545).epsilon(1e-9));
  CHECK(thermal::kernel_perpendicular(1.0, params) ==
        doctest::Approx(1.7724694925601779).epsilon(1e-9));

  for (const double l : {0.3, 1.7}) {
    for (const double aT : {0.1, 0.8}) {
      const auto p = thermal::Params::from_aT(aT);
      CHECK(thermal::kernel_parallel(l, p) ==
            doctest::Approx(kernel_parallel_oracle(l, 1.0 / aT)).epsilon(2e-9));
      CHECK(thermal::kernel_perpendicular(l, p) ==
            doctest::Approx(kernel_perpendicular_oracle(l, 1.0 / aT)).epsilon(2e-9));
    }
  }
}

TEST_CASE("temperature only adds attraction") {
  const std::vector<double> b_grid = {0.5, 1.0, 2.0, 5.0, 20.0};
  for (const double l : {0.3, 1.0, 2.0}) {
    const double cold_par = thermal::kernel_parallel(l, thermal::Params::zero_temperature());
    const double cold_perp = thermal::kernel_perpendicular(l, thermal::Params::zero_temperature());
    double prev_par = cold_par, prev_perp = cold_perp;
    for (auto it = b_grid.rbegin(); it != b_grid.rend(); ++it) {  // decreasing b = warming up
      thermal::Params p;
      p.b = *it;
      const double hot_par = thermal::kernel_parallel(l, p);
      const double hot_perp = thermal::kernel_perpendicular(l, p);
      CHECK(hot_par >= prev_par);
      CHECK(hot_perp >= prev_perp);
      CHECK(hot_par >= cold_par);
      CHECK(hot_perp >= cold_perp);
      prev_par = hot_par;
      prev_perp = hot_perp;
    }
  }
}

TEST_CASE("low-temperature excess approaches the open-bound value") {
  // With the propertime lower bound pushed to zero, the thermal excess is
  // 32 zeta(4) / b^4 (parallel) and 8 sqrt(pi) zeta(3) / b^3
  // (perpendicular); at b = 30 the finite-bound deficit is invisible.
  const double l = 1.7;
  thermal::Params p;
  p.b = 30.0;
  const double excess_par = thermal::kernel_parallel(l, p) - 0.5 * l * l * l * l;
  CHECK(excess_par * std::pow(p.b, 4) / 32.0 == doctest::Approx(kZeta4).epsilon(1e-12));
  const double excess_perp = thermal::kernel_perpendicular(l, p) - (2.0 / 3.0) * l * l * l;
  CHECK(excess_perp * std::pow(p.b, 3) / (8.0 * kSqrtPi) ==
        doctest::Approx(kZeta3).epsilon(1e-12));
}

TEST_CASE("offset integrand combines profile nodes") {
  const auto zero = thermal::Params::zero_temperature();

  geometry::PerpendicularObservable empty;
  CHECK(thermal::perp_loop_integrand(empty, zero) == 0.0);

  geometry::PerpendicularObservable square;
  square.xi_first = -0.5;
  square.dxi = 1.0;
  square.extents = {2.0, 2.0};
  CHECK(thermal::perp_loop_integrand(square, zero) == doctest::Approx(32.0 / 3.0).epsilon(1e-15));

  geometry::PerLoopObservable parallel = geometry::ParallelObservable{1.0};
  CHECK_THROWS_AS(thermal::perp_loop_integrand(parallel, zero), ValidationError);
  CHECK(thermal::loop_integrand(parallel, zero) == 0.5);
}

TEST_CASE("offset quadrature of the integrand refines like 1/n") {
  for (int trial = 0; trial < 5; ++trial) {
    const auto loop = wlmc::loopgen::generate_unit_loop(512, 606, trial);
    const auto params = thermal::Params::from_aT(0.2);
    auto value = [&](std::size_t n_xi) {
      return thermal::perp_loop_integrand(geometry::perpendicular_observable(loop, n_xi), params);
    };
    const double q128 = value(128);
    const double q256 = value(256);
    CHECK(std::abs(q256 - q128) <= 8.0 * (std::abs(q128) + 1.0) / 128.0);
  }
}

TEST_CASE("erf stays within 1e-12 of its defining integral") {
  for (double x = 0.125; x <= 6.0; x += 0.125) {
    const double expected = static_cast<double>(oracles::erf_quadrature(x));
    CHECK(std::erf(x) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("series tolerance knob controls the truncation") {
  const double l = 0.8;
  for (const double aT : {0.1, 0.5, 1.0}) {
    const auto coarse = thermal::Params::from_aT(aT, 1e-7);
    const auto fine = thermal::Params::from_aT(aT, 1e-15);
    const double v_coarse = thermal::kernel_parallel(l, coarse);
    const double v_fine = thermal::kernel_parallel(l, fine);
    CHECK(std::abs(v_coarse - v_fine) <= 1e-6 * std::abs(v_fine));
  }
}
