#include "wlmc/thermal.hpp"

#include <algorithm>
#include <cmath>

#include "wlmc/errors.hpp"

namespace wlmc::thermal {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kGamma32 = 0.88622692545275801365;  // Gamma(3/2) = sqrt(pi)/2
constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kZeta4 = 1.0823232337111381916;     // pi^4 / 90

// sum_{n > N} n^-4. Exact difference below N = 64, Euler-Maclaurin above.
double zeta4_tail(std::size_t n_explicit) {
  if (n_explicit <= 64) {
    long double partial = 0.0L;
    for (std::size_t n = n_explicit; n >= 1; --n) {
      const long double nn = static_cast<long double>(n) * static_cast<long double>(n);
      partial += 1.0L / (nn * nn);
    }
    return static_cast<double>(static_cast<long double>(kZeta4) - partial);
  }
  const double inv = 1.0 / static_cast<double>(n_explicit);
  const double inv3 = inv * inv * inv;
  return inv3 * (1.0 / 3.0 - 0.5 * inv + inv * inv / 3.0 - inv * inv * inv * inv / 6.0);
}

// sum_{n > N} n^-3.
double zeta3_tail(std::size_t n_explicit) {
  if (n_explicit <= 64) {
    long double partial = 0.0L;
    for (std::size_t n = n_explicit; n >= 1; --n) {
      const long double nd = static_cast<long double>(n);
      partial += 1.0L / (nd * nd * nd);
    }
    return static_cast<double>(static_cast<long double>(kZeta3) - partial);
  }
  const double inv = 1.0 / static_cast<double>(n_explicit);
  const double inv2 = inv * inv;
  return inv2 * (0.5 - 0.5 * inv + 0.25 * inv2 - inv2 * inv2 / 12.0);
}

// 1 - e^{-x}(1 + x), stable for small x through its alternating series
// sum_{k>=2} (-1)^k (k-1) x^k / k!.
double one_minus_exp_linear(double x) {
  if (x >= 1.0) return 1.0 - std::exp(-x) * (1.0 + x);
  double term = 0.5 * x * x;
  double sum = term;
  for (int k = 2; k < 64; ++k) {
    term *= -x * static_cast<double>(k) /
            (static_cast<double>(k - 1) * static_cast<double>(k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

std::size_t explicit_term_count(double b, double l, double trunc_eps) {
  // Terms with c_n l^2 = (n b l / 2)^2 beyond x_star contribute less than
  // trunc_eps relative to the zeta completion that replaces them.
  const double x_star = -std::log(trunc_eps) + 8.0;
  const double q = 0.25 * b * b * l * l;
  if (q >= x_star) return 1;
  const double n = std::ceil(std::sqrt(x_star / q));
  return static_cast<std::size_t>(std::min(n, 2.0e6));
}

}  // namespace

Params Params::zero_temperature(double trunc_eps) {
  Params p;
  p.b = std::numeric_limits<double>::infinity();
  p.trunc_eps = trunc_eps;
  p.validate();
  return p;
}

Params Params::from_aT(double aT, double trunc_eps) {
  if (!(aT >= 0.0)) throw ValidationError("aT must be nonnegative");
  Params p;
  p.b = aT == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / aT;
  p.trunc_eps = trunc_eps;
  p.validate();
  return p;
}

void Params::validate() const {
  if (!(b > 0.0)) throw ValidationError("inverse temperature b must be positive (or infinite)");
  if (!(trunc_eps > 0.0) || !(trunc_eps < 1e-6)) {
    throw ValidationError("trunc_eps must lie in (0, 1e-6)");
  }
}

double winding_sum(double c, double trunc_eps) {
  if (!(c > 0.0)) throw ValidationError("winding_sum: c must be positive");
  if (std::isinf(c)) return 1.0;
  if (c < 1.0) return std::sqrt(kPi / c) * winding_sum(kPi * kPi / c, trunc_eps);
  double sum = 1.0;
  for (int n = 1; n < 1000; ++n) {
    const double term = 2.0 * std::exp(-c * static_cast<double>(n) * static_cast<double>(n));
    sum += term;
    if (term < trunc_eps * sum) break;
  }
  return sum;
}

double propertime_tail_parallel(double c, double l) {
  if (!(c > 0.0)) throw ValidationError("propertime_tail_parallel: c must be positive");
  if (!(l >= 0.0)) throw ValidationError("propertime_tail_parallel: l must be nonnegative");
  if (l == 0.0) return 0.0;
  return one_minus_exp_linear(c * l * l) / (c * c);
}

double lower_gamma_3_2(double x) {
  if (!(x >= 0.0)) throw ValidationError("lower_gamma_3_2: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x >= 1.0) {
    const double r = std::sqrt(x);
    return kGamma32 - (r * std::exp(-x) + 0.5 * kSqrtPi * std::erfc(r));
  }
  // ascending series: gamma(s,x) = x^s e^{-x} sum_k x^k / (s (s+1) ... (s+k))
  double term = 1.0 / 1.5;
  double sum = term;
  for (int k = 1; k < 64; ++k) {
    term *= x / (1.5 + static_cast<double>(k));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return x * std::sqrt(x) * std::exp(-x) * sum;
}

double propertime_tail_perpendicular(double c, double l) {
  if (!(c > 0.0)) throw ValidationError("propertime_tail_perpendicular: c must be positive");
  if (!(l >= 0.0)) throw ValidationError("propertime_tail_perpendicular: l must be nonnegative");
  if (l == 0.0) return 0.0;
  return lower_gamma_3_2(c * l * l) / (c * std::sqrt(c));
}

double kernel_parallel(double l, const Params& params) {
  if (!(l >= 0.0)) throw ValidationError("kernel_parallel: l must be nonnegative");
  params.validate();
  const double base = 0.5 * l * l * l * l;
  if (l == 0.0) return 0.0;
  if (params.is_zero_temperature()) return base;
  const double b = params.b;
  const std::size_t n_explicit = explicit_term_count(b, l, params.trunc_eps);
  double sum = 0.0;
  for (std::size_t n = 1; n <= n_explicit; ++n) {
    const double nb = static_cast<double>(n) * b;
    sum += propertime_tail_parallel(0.25 * nb * nb, l);
  }
  const double b2 = b * b;
  const double tail = 16.0 / (b2 * b2) * zeta4_tail(n_explicit);
  return base + 2.0 * (sum + tail);
}

double kernel_perpendicular(double l, const Params& params) {
  if (!(l >= 0.0)) throw ValidationError("kernel_perpendicular: l must be nonnegative");
  params.validate();
  const double base = (2.0 / 3.0) * l * l * l;
  if (l == 0.0) return 0.0;
  if (params.is_zero_temperature()) return base;
  const double b = params.b;
  const std::size_t n_explicit = explicit_term_count(b, l, params.trunc_eps);
  double sum = 0.0;
  for (std::size_t n = 1; n <= n_explicit; ++n) {
    const double nb = static_cast<double>(n) * b;
    sum += propertime_tail_perpendicular(0.25 * nb * nb, l);
  }
  const double tail = kGamma32 * 8.0 / (b * b * b) * zeta3_tail(n_explicit);
  return base + 2.0 * (sum + tail);
}

double perp_loop_integrand(const geometry::PerpendicularObservable& obs, const Params& params) {
  params.validate();
  double total = 0.0;
  for (const double l : obs.extents) {
    if (l > 0.0) total += kernel_perpendicular(l, params);
  }
  return total * obs.dxi;
}

double perp_loop_integrand(const geometry::PerLoopObservable& obs, const Params& params) {
  const auto* perp = std::get_if<geometry::PerpendicularObservable>(&obs);
  if (perp == nullptr) {
    throw ValidationError("perp_loop_integrand: observable is not a perpendicular profile");
  }
  return perp_loop_integrand(*perp, params);
}

double loop_integrand(const geometry::PerLoopObservable& obs, const Params& params) {
  if (const auto* par = std::get_if<geometry::ParallelObservable>(&obs)) {
    return kernel_parallel(par->extent_z, params);
  }
  return perp_loop_integrand(std::get<geometry::PerpendicularObservable>(obs), params);
}

}  // namespace wlmc::thermal
