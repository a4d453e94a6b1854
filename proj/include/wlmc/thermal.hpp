#pragma once

#include <cmath>
#include <limits>

#include "wlmc/geometry.hpp"

namespace wlmc::thermal {

/// Dimensionless inverse temperature b = (plate separation) / (thermal
/// length) = 1/(aT). b = +infinity encodes exact zero temperature and is
/// handled as its own code path, not as a large number.
struct Params {
  double b = std::numeric_limits<double>::infinity();
  double trunc_eps = 1e-14;

  static Params zero_temperature(double trunc_eps = 1e-14);
  static Params from_aT(double aT, double trunc_eps = 1e-14);

  bool is_zero_temperature() const { return std::isinf(b); }
  double aT() const { return is_zero_temperature() ? 0.0 : 1.0 / b; }
  void validate() const;  // throws ValidationError
};

/// Theta-function value sum_{n in Z} exp(-c n^2), >= 1. Evaluated directly
/// for c >= 1 and through the modular identity
/// S(c) = sqrt(pi/c) S(pi^2/c) for c < 1, where the direct sum converges
/// slowly.
double winding_sum(double c, double trunc_eps = 1e-14);

/// Propertime integral over [1/l^2, inf) of T^-3 exp(-c/T):
/// (1 - e^{-c l^2}(1 + c l^2)) / c^2. Series form for small c l^2.
double propertime_tail_parallel(double c, double l);

/// Same at power 5/2: gamma(3/2, c l^2) / c^{3/2}.
double propertime_tail_perpendicular(double c, double l);

/// Lower incomplete gamma at 3/2: ascending series below x = 1, else
/// Gamma(3/2) - (sqrt(x) e^{-x} + (sqrt(pi)/2) erfc(sqrt(x))).
double lower_gamma_3_2(double x);

/// Winding-summed propertime kernel for parallel plates,
///   I(l, b) = l^4/2 + 2 sum_{n>=1} propertime_tail_parallel(n^2 b^2/4, l).
/// The first terms are summed explicitly until their exponential factor is
/// dead, then the remainder is completed in closed form through the zeta
/// tail of sum 1/c_n^2 = (16/b^4) sum n^-4. All pieces are positive, so the
/// zero-temperature bound I >= l^4/2 survives rounding.
double kernel_parallel(double l, const Params& params);

/// Same for the perpendicular configuration:
///   I(l, b) = (2/3) l^3 + 2 sum_{n>=1} propertime_tail_perpendicular(...),
/// completed through (8/b^3) Gamma(3/2) sum n^-3.
double kernel_perpendicular(double l, const Params& params);

/// Midpoint-rule xi quadrature sum_j dxi * kernel_perpendicular(l_j, b)
/// over the nonzero nodes of a crossing profile. Throws ValidationError if
/// handed a parallel observable.
double perp_loop_integrand(const geometry::PerpendicularObservable& obs, const Params& params);
double perp_loop_integrand(const geometry::PerLoopObservable& obs, const Params& params);

/// Per-loop propertime integrand for either geometry.
double loop_integrand(const geometry::PerLoopObservable& obs, const Params& params);

}  // namespace wlmc::thermal
