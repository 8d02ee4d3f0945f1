#include "spingap/special_functions.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "spingap/errors.hpp"

namespace spingap {

namespace {

using ld = long double;

constexpr double kMatchRadius = 6.0;
constexpr double kMaxOrder = 50.0;
constexpr double kMaxArgument = 50.0;

// 1/Gamma(z) through the reflection formula; entire, so pole arguments give 0.
ld recip_gamma(ld z) {
  if (z > 0.5L) return std::exp(-static_cast<ld>(std::lgammal(z)));
  return std::sin(static_cast<ld>(M_PI) * z) *
         std::exp(static_cast<ld>(std::lgammal(1.0L - z))) / static_cast<ld>(M_PI);
}

// Kummer series M(a; b; y) with y >= 0, summed in extended precision.
ld kummer_m(ld a, ld b, ld y) {
  ld term = 1.0L, sum = 1.0L;
  for (int k = 0; k < 4000; ++k) {
    term *= (a + k) * y / ((b + k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-24L * std::abs(sum) && k > 4) return sum;
  }
  throw NumericalError("kummer_m: series failed to converge");
}

// Even/odd Kummer-pair components of D_nu at x:
//   D_nu(x) = A w_e(x) - C w_o(x),
//   w_e = e^{-x^2/4} M(-nu/2; 1/2; x^2/2)           (even in x)
//   w_o = x e^{-x^2/4} M((1-nu)/2; 3/2; x^2/2)      (odd in x)
//   A = sqrt(pi) 2^{nu/2} / Gamma((1-nu)/2),  C = sqrt(2) A-like / Gamma(-nu/2).
struct KummerPair {
  ld w_even, w_even_prime;
  ld w_odd, w_odd_prime;
  ld coeff_even, coeff_odd;
};

KummerPair kummer_pair(double nu, double x) {
  const ld xl = static_cast<ld>(x);
  const ld y = xl * xl / 2.0L;
  const ld a1 = -0.5L * static_cast<ld>(nu), b1 = 0.5L;
  const ld a2 = 0.5L * (1.0L - static_cast<ld>(nu)), b2 = 1.5L;
  const ld m1 = kummer_m(a1, b1, y);
  const ld m2 = kummer_m(a2, b2, y);
  // dM(a;b;y)/dy = (a/b) M(a+1; b+1; y)
  const ld dm1 = (a1 / b1) * kummer_m(a1 + 1.0L, b1 + 1.0L, y);
  const ld dm2 = (a2 / b2) * kummer_m(a2 + 1.0L, b2 + 1.0L, y);
  const ld gauss = std::exp(-0.5L * y);

  KummerPair out;
  out.w_even = gauss * m1;
  out.w_even_prime = gauss * (dm1 * xl - 0.5L * xl * m1);
  out.w_odd = gauss * xl * m2;
  out.w_odd_prime = gauss * ((1.0L - 0.5L * xl * xl) * m2 + xl * xl * dm2);
  const ld pref = std::sqrt(static_cast<ld>(M_PI)) *
                  std::exp(0.5L * static_cast<ld>(nu) * std::log(2.0L));
  out.coeff_even = pref * recip_gamma(0.5L * (1.0L - static_cast<ld>(nu)));
  out.coeff_odd = pref * std::sqrt(2.0L) * recip_gamma(-0.5L * static_cast<ld>(nu));
  return out;
}

// The workhorse inside |x| <= 6.
double series_value(double nu, double x) {
  const KummerPair p = kummer_pair(nu, x);
  return static_cast<double>(p.coeff_even * p.w_even - p.coeff_odd * p.w_odd);
}

struct SeriesTry {
  double value = 0.0;
  bool ok = false;
};

// Large-argument expansion D_nu ~ x^nu e^{-x^2/4} sum_k t_k, x > 0. The terms
// may grow through an early hump before decaying; the sum is truncated at the
// globally smallest term (the usual optimal truncation) and accepted only if
// that term is negligible against the partial sum.
SeriesTry poincare_try(double nu, double x) {
  SeriesTry out;
  if (!(x > 0.0)) return out;
  ld term = 1.0L, sum = 1.0L, max_term = 1.0L;
  ld best_sum = 1.0L, min_term = 1.0L;
  for (int k = 0; k < 220; ++k) {
    const ld factor = -(static_cast<ld>(nu) - 2 * k) *
                      (static_cast<ld>(nu) - 2 * k - 1) /
                      (2.0L * (k + 1) * static_cast<ld>(x) * x);
    term *= factor;
    const ld at = std::abs(term);
    sum += term;
    max_term = std::max(max_term, at);
    if (at < min_term) {
      min_term = at;
      best_sum = sum;
    }
    if (at > 1e4L * (min_term + 1e-300L) && at > 1.0L) break;  // past the optimum
    if (at <= 1e-13L * std::abs(sum)) break;
  }
  if (!(min_term <= 1e-11L * std::abs(best_sum))) return out;
  if (!(std::abs(best_sum) * 1e8L >= max_term)) return out;
  const ld log_val = static_cast<ld>(nu) * std::log(static_cast<ld>(x)) -
                     static_cast<ld>(x) * x / 4.0L;
  out.value = static_cast<double>(best_sum * std::exp(log_val));
  out.ok = true;
  return out;
}

// D_nu(x) = e^{x^2/4} / Gamma(-nu) * I,
// I = int_0^inf t^{-nu} e^{-(t+x)^2/2} dcosh-scaled, valid nu < 0; used for
// nu <= -1 where the integrand has no endpoint singularity. Exp-sinh
// substitution t = exp(sinh w), trapezoid in w.
double integral_value(double nu, double x) {
  const ld h = 0.02L;
  const ld wlim = 5.6L;
  const int n = static_cast<int>(2 * wlim / h) + 1;
  // locate the max of the log-integrand for scaling
  ld peak = -std::numeric_limits<ld>::max();
  auto log_f = [&](ld w) {
    const ld sh = std::sinh(w);
    const ld t = std::exp(sh);
    const ld u = t + static_cast<ld>(x);
    return -static_cast<ld>(nu) * sh - 0.5L * u * u + std::log(std::cosh(w));
  };
  for (int i = 0; i < n; ++i) peak = std::max(peak, log_f(-wlim + i * h));
  ld sum = 0.0L;
  for (int i = 0; i < n; ++i) {
    const ld w = -wlim + i * h;
    const ld weight = (i == 0 || i == n - 1) ? 0.5L : 1.0L;
    sum += weight * std::exp(log_f(w) - peak);
  }
  const ld log_result = static_cast<ld>(x) * x / 4.0L + peak + std::log(sum * h) -
                        static_cast<ld>(std::lgammal(-static_cast<ld>(nu)));
  if (log_result > 708.0L)
    throw NumericalError("parabolic_cylinder_d: value overflows double range");
  return static_cast<double>(std::exp(log_result));
}

// Integrate y'' = (x^2/4 - nu - 1/2) y from x0 (with y, y' given) to x1.
void weber_ode_integrate(double nu, double x0, double x1, double& y, double& yp) {
  const double span = std::abs(x1 - x0);
  if (span == 0.0) return;
  const int steps = std::max(64, static_cast<int>(span / 2e-4));
  const double h = (x1 - x0) / steps;
  auto q = [nu](double x) { return 0.25 * x * x - nu - 0.5; };
  double x = x0;
  for (int i = 0; i < steps; ++i) {
    const double k1y = yp, k1p = q(x) * y;
    const double k2y = yp + 0.5 * h * k1p, k2p = q(x + 0.5 * h) * (y + 0.5 * h * k1y);
    const double k3y = yp + 0.5 * h * k2p, k3p = q(x + 0.5 * h) * (y + 0.5 * h * k2y);
    const double k4y = yp + h * k3p, k4p = q(x + h) * (y + h * k3y);
    y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
    yp += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    x += h;
  }
}

double positive_branch(double nu, double x);

// Decaying solution carried inward from an anchor where the expansion holds.
double bridge_inward(double nu, double x) {
  double xa = std::max(x + 4.0, 12.0);
  SeriesTry d0, d1;
  for (int tries = 0; tries < 40; ++tries) {
    d0 = poincare_try(nu, xa);
    d1 = poincare_try(nu - 1.0, xa);
    if (d0.ok && d1.ok) break;
    xa += 3.0;
  }
  if (!(d0.ok && d1.ok))
    throw NumericalError("parabolic_cylinder_d: no valid anchor for ODE bridge");
  double y = d0.value;
  double yp = nu * d1.value - 0.5 * xa * d0.value;  // D' = nu D_{nu-1} - x/2 D
  weber_ode_integrate(nu, xa, x, y, yp);
  return y;
}

double positive_branch(double nu, double x) {
  const SeriesTry direct = poincare_try(nu, x);
  if (direct.ok) return direct.value;
  if (nu <= -1.0) return integral_value(nu, x);
  return bridge_inward(nu, x);
}

// x < -6: reflect through one parity component,
//   D_nu(-ax) = 2 A w_e(ax) - D_nu(ax)   (even route)
//             = D_nu(ax) + 2 C w_o(ax)   (odd route),
// carrying the component outward from the matching radius by the Weber ODE.
// The route is chosen so the carried component keeps an O(1) admixture of
// the growing solution: near even integer nu the even part is purely
// decaying (outward integration would be unstable), so the odd route is
// used there, and vice versa.
double negative_branch(double nu, double x) {
  const double ax = -x;
  if (nu <= -1.0) return integral_value(nu, x);

  const double d_even = std::abs(nu - 2.0 * std::round(nu / 2.0));
  const double d_odd = std::abs(nu - (2.0 * std::round((nu - 1.0) / 2.0) + 1.0));
  const bool even_route = d_even >= d_odd;

  const KummerPair p = kummer_pair(nu, kMatchRadius);
  double w = static_cast<double>(even_route ? p.w_even : p.w_odd);
  double wp = static_cast<double>(even_route ? p.w_even_prime : p.w_odd_prime);
  weber_ode_integrate(nu, kMatchRadius, ax, w, wp);

  if (even_route)
    return static_cast<double>(2.0L * p.coeff_even * static_cast<ld>(w)) -
           positive_branch(nu, ax);
  return positive_branch(nu, ax) +
         static_cast<double>(2.0L * p.coeff_odd * static_cast<ld>(w));
}

}  // namespace

double parabolic_cylinder_d(double nu, double x) {
  if (!(std::abs(nu) <= kMaxOrder) || !(std::abs(x) <= kMaxArgument))
    throw ConfigError("parabolic_cylinder_d: outside supported envelope |nu| <= 50, "
                      "|x| <= 50");
  if (std::abs(x) <= kMatchRadius) {
    // For negative orders on the decaying side the value is exponentially
    // small against the series terms; the cancellation-free integral keeps
    // full relative accuracy there.
    if (x > 4.0 && nu < 0.0) {
      if (nu <= -1.0) return integral_value(nu, x);
      return x * integral_value(nu - 1.0, x) - (nu - 1.0) * integral_value(nu - 2.0, x);
    }
    return series_value(nu, x);
  }
  if (x > 0.0) return positive_branch(nu, x);
  return negative_branch(nu, x);
}

double summit_ground_kummer(double delta_plus, double xi) {
  if (!(std::abs(xi) <= 5.0))
    throw ConfigError("summit_ground_kummer: |xi| <= 5 (summit region) required");
  if (!(std::abs(delta_plus) <= 50.0))
    throw ConfigError("summit_ground_kummer: |delta| <= 50 required");
  using cld = std::complex<ld>;
  const cld a(0.25L, -0.5L * static_cast<ld>(delta_plus));
  const cld b(0.5L, 0.0L);
  const cld w(0.0L, static_cast<ld>(xi) * xi);
  cld term(1.0L, 0.0L), sum(1.0L, 0.0L);
  for (int k = 0; k < 2000; ++k) {
    term *= (a + static_cast<ld>(k)) * w /
            ((b + static_cast<ld>(k)) * static_cast<ld>(k + 1));
    sum += term;
    if (std::abs(term) < 1e-24L * std::abs(sum) && k > 4) break;
    if (k == 1999)
      throw NumericalError("summit_ground_kummer: series failed to converge");
  }
  const cld phase = std::exp(cld(0.0L, -0.5L * static_cast<ld>(xi) * xi));
  return static_cast<double>((phase * sum).real());
}

}  // namespace spingap
