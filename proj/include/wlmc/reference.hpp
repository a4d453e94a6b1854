#pragma once

#include <cstddef>

namespace wlmc::reference {

struct SeriesControl {
  double rel_tol = 1e-12;
  std::size_t max_terms = 1000000;

  void validate() const;  // throws ValidationError
};

/// Exact finite-temperature parallel-plate force for the Dirichlet scalar,
/// as the dimensionless coefficient F a^4 / A (negative). The Matsubara
/// series is differentiated with respect to the separation term by term in
/// closed form; the m -> infinity tail, whose bracket approaches 1, is
/// completed analytically through zeta(3), leaving an exponentially
/// convergent remainder. aT = 0 returns -pi^2/480.
double parallel_force_analytic(double aT, const SeriesControl& ctrl = {});

/// F(aT)/F(0) from the series above; >= 1 and nondecreasing.
double parallel_force_ratio_analytic(double aT, const SeriesControl& ctrl = {});

/// Leading low-temperature corrections, as dimensionless coefficient
/// shifts: -(pi^2/90) (aT)^4 per unit A/a^4 for parallel plates and
/// -zeta(3)/(4 pi) (aT)^3 per unit L/a^3 for perpendicular plates
/// (valid for aT << 1).
double parallel_leading_correction(double aT);
double perpendicular_leading_correction(double aT);

/// aT in natural units from SI inputs: separation * k_B * temperature /
/// (hbar * c). CODATA 2018 constants (k_B and c exact by definition).
double room_temperature_aT(double separation_m, double temperature_K);

}  // namespace wlmc::reference
