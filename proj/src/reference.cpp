#include "wlmc/reference.hpp"

#include <cmath>
#include <string>

#include "wlmc/errors.hpp"

namespace wlmc::reference {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kForceAtZero = -0.020561675835602830;  // -pi^2 / 480

// Excess of the Matsubara bracket over its m -> infinity limit:
//   delta(x) = (coth x - 1) + x csch^2 x + x^2 coth x csch^2 x,
// written through u = expm1(-2x) so it stays accurate and overflow-free
// from x -> 0 (where it grows like 3/x) to arbitrarily large x (where it
// dies like 4 x^2 e^{-2x}).
double bracket_excess(double x) {
  const double u = std::expm1(-2.0 * x);
  const double coth = -(2.0 + u) / u;
  const double coth_m1 = -2.0 * (1.0 + u) / u;
  const double csch2 = 4.0 * (1.0 + u) / (u * u);
  return coth_m1 + x * csch2 + x * x * coth * csch2;
}

}  // namespace

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1e-6)) {
    throw ValidationError("SeriesControl: rel_tol must lie in (0, 1e-6)");
  }
  if (max_terms < 1) throw ValidationError("SeriesControl: max_terms must be positive");
}

double parallel_force_analytic(double aT, const SeriesControl& ctrl) {
  ctrl.validate();
  if (!(aT >= 0.0)) throw ValidationError("parallel_force_analytic: aT must be nonnegative");
  if (aT == 0.0) return kForceAtZero;

  // Differentiating each Matsubara term of the free-energy series with
  // respect to the separation gives, per term,
  //   (2 pi m)^-3 [coth x + x csch^2 x + x^2 coth x csch^2 x],  x = 2 pi m aT.
  // The bracket tends to 1, so the series is summed as
  //   zeta(3)/(2 pi)^3 + sum_m (2 pi m)^-3 delta(x_m)
  // with an explicit tail bound; the excess terms fall off like m^-4 until
  // x_m ~ 1 and exponentially beyond.
  double excess_sum = 0.0;
  const double limit_part = kZeta3 / (kTwoPi * kTwoPi * kTwoPi);
  bool converged = false;
  for (std::size_t m = 1; m <= ctrl.max_terms; ++m) {
    const double md = static_cast<double>(m);
    const double x = kTwoPi * md * aT;
    const double term = bracket_excess(x) / (kTwoPi * md * kTwoPi * md * kTwoPi * md);
    excess_sum += term;
    const double tail_bound = term * std::max(1.0, md / 3.0);
    if (tail_bound <= 0.25 * ctrl.rel_tol * (limit_part + excess_sum)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("parallel_force_analytic: no convergence within " +
                           std::to_string(ctrl.max_terms) + " terms at aT = " +
                           std::to_string(aT));
  }
  return -kPi * kPi * aT * (limit_part + excess_sum);
}

double parallel_force_ratio_analytic(double aT, const SeriesControl& ctrl) {
  return parallel_force_analytic(aT, ctrl) / kForceAtZero;
}

double parallel_leading_correction(double aT) {
  if (!(aT >= 0.0)) throw ValidationError("parallel_leading_correction: aT must be nonnegative");
  const double t2 = aT * aT;
  return -(kPi * kPi / 90.0) * t2 * t2;
}

double perpendicular_leading_correction(double aT) {
  if (!(aT >= 0.0)) {
    throw ValidationError("perpendicular_leading_correction: aT must be nonnegative");
  }
  return -kZeta3 / (4.0 * kPi) * aT * aT * aT;
}

double room_temperature_aT(double separation_m, double temperature_K) {
  if (!(separation_m > 0.0) || !(temperature_K > 0.0)) {
    throw ValidationError("room_temperature_aT: separation and temperature must be positive");
  }
  constexpr double kBoltzmann = 1.380649e-23;   // J/K, exact
  constexpr double kHbar = 1.054571817e-34;     // J s, CODATA 2018
  constexpr double kLightSpeed = 299792458.0;   // m/s, exact
  return separation_m * kBoltzmann * temperature_K / (kHbar * kLightSpeed);
}

}  // namespace wlmc::reference
