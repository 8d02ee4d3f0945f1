#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "spingap/doublewell.hpp"
#include "spingap/errors.hpp"
#include "spingap/special_functions.hpp"

using namespace spingap;

namespace {

// Quadrature oracle, valid for nu > -1:
// D_nu(x) = sqrt(2/pi) e^{x^2/4} int_0^inf t^nu e^{-t^2/2} cos(x t - nu pi/2) dt.
// The substitution t = u^16 absorbs the endpoint singularity of t^nu (and its
// derivative spikes for fractional nu), leaving a smooth integrand for
// composite Simpson in extended precision. Reliable for |x| <= 6.5.
double oracle_cos_integral(double nu, double x) {
  const long double t_upper = 14.0L + std::abs(x);
  const long double upper = std::pow(t_upper, 1.0L / 16.0L);
  const std::size_t n = 400000;  // even
  const long double h = upper / n;
  auto f = [&](long double u) -> long double {
    if (u == 0.0L) return 0.0L;
    const long double t = std::pow(u, 16.0L);
    return 16.0L * std::pow(u, 16.0L * (long double)nu + 15.0L) *
           std::exp(-t * t / 2.0L) *
           std::cos((long double)x * t - (long double)nu * M_PI / 2.0L);
  };
  long double sum = f(0.0L) + f(upper);
  for (std::size_t i = 1; i < n; ++i)
    sum += f(i * h) * ((i % 2) ? 4.0L : 2.0L);
  const long double integral = sum * h / 3.0L;
  return static_cast<double>(std::sqrt(2.0L / M_PI) *
                             std::exp((long double)x * x / 4.0L) * integral);
}

// Downward recurrence from cos-integral values (valid only for nu > -1):
// D_nu = (x D_{nu+1} - D_{nu+2})/(nu+1), applied recursively.
double oracle_lifted(double nu, double x) {
  if (nu > -1.0) return oracle_cos_integral(nu, x);
  return (x * oracle_lifted(nu + 1.0, x) - oracle_lifted(nu + 2.0, x)) / (nu + 1.0);
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Five-point second derivative.
double second_derivative(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
         (12 * h * h);
}

}  // namespace

TEST_SUITE("special_functions") {

TEST_CASE("identity orders across every branch") {
  for (double x : {-50.0, -20.0, -6.5, -6.0, -3.0, -0.4, 0.0, 0.7, 3.0, 5.9, 6.1,
                   10.0, 20.0, 35.0, 50.0}) {
    CHECK(rel_err(parabolic_cylinder_d(0.0, x), std::exp(-x * x / 4.0)) <= 1e-9);
    if (x != 0.0)
      CHECK(rel_err(parabolic_cylinder_d(1.0, x), x * std::exp(-x * x / 4.0)) <= 1e-9);
  }
}

TEST_CASE("quadrature oracle at the reference point") {
  const double mine = parabolic_cylinder_d(0.3, 2.0);
  const double oracle = oracle_cos_integral(0.3, 2.0);
  CHECK(rel_err(mine, oracle) <= 1e-8);
}

TEST_CASE("scattered orders and arguments against the oracle") {
  for (double nu : {-0.6, 0.3, 1.4, 2.5, 4.2}) {
    for (double x : {-6.3, -4.0, -1.1, 0.9, 3.7, 6.4}) {
      const double mine = parabolic_cylinder_d(nu, x);
      const double oracle = oracle_cos_integral(nu, x);
      // tolerance limited by the oracle's cancellation at e^{x^2/2}
      CHECK_MESSAGE(rel_err(mine, oracle) <= 1e-7,
                    "nu=" << nu << " x=" << x << " mine=" << mine
                          << " oracle=" << oracle);
    }
  }
  // negative orders below the oracle's validity, lifted by the recurrence
  // (the lift amplifies the oracle's own cancellation, hence |x| <= 5)
  for (double nu : {-2.4, -1.6}) {
    for (double x : {-5.0, -2.0, 1.5, 4.6}) {
      const double mine = parabolic_cylinder_d(nu, x);
      const double oracle = oracle_lifted(nu, x);
      CHECK_MESSAGE(rel_err(mine, oracle) <= 1e-6,
                    "nu=" << nu << " x=" << x << " mine=" << mine
                          << " oracle=" << oracle);
    }
  }
}

TEST_CASE("defining ODE holds pointwise") {
  const double h = 4e-3;
  for (double nu : {-4.5, -1.3, 0.0, 0.7, 2.2, 5.5, 11.0}) {
    for (double x : {-11.0, -6.4, -2.5, 0.3, 1.9, 5.8, 6.6, 9.0}) {
      auto f = [nu](double t) { return parabolic_cylinder_d(nu, t); };
      const double lhs = second_derivative(f, x, h);
      const double rhs = (0.25 * x * x - nu - 0.5) * parabolic_cylinder_d(nu, x);
      const double scale =
          std::abs(rhs) + std::abs(lhs) + std::abs(f(x)) + 1e-30;
      CHECK_MESSAGE(std::abs(lhs - rhs) / scale <= 1e-7,
                    "nu=" << nu << " x=" << x << " lhs=" << lhs << " rhs=" << rhs);
    }
  }
}

TEST_CASE("three-term recurrence in the order") {
  for (double nu : {-0.8, 0.6, 1.9, 3.3}) {
    for (double x : {-8.0, -3.0, 1.2, 6.8, 14.0}) {
      const double up = parabolic_cylinder_d(nu + 1.0, x);
      const double mid = parabolic_cylinder_d(nu, x);
      const double down = parabolic_cylinder_d(nu - 1.0, x);
      const double resid = up - x * mid + nu * down;
      const double scale = std::abs(up) + std::abs(x * mid) + std::abs(nu * down);
      CHECK(std::abs(resid) <= 1e-8 * std::max(scale, 1e-30));
    }
  }
}

TEST_CASE("envelope is enforced") {
  CHECK_THROWS_AS(parabolic_cylinder_d(60.0, 1.0), ConfigError);
  CHECK_THROWS_AS(parabolic_cylinder_d(1.0, 60.0), ConfigError);
}

TEST_CASE("summit state pinned at the origin and even") {
  CHECK(summit_ground_kummer(0.0, 0.0) == doctest::Approx(1.0));
  CHECK(summit_ground_kummer(1.3, 0.0) == doctest::Approx(1.0));
  for (double delta : {-0.4, 0.3, 1.1})
    for (double xi : {0.3, 1.7, 3.9})
      CHECK(summit_ground_kummer(delta, xi) ==
            doctest::Approx(summit_ground_kummer(delta, -xi)).epsilon(1e-12));
}

TEST_CASE("summit state matches an ODE shooting oracle") {
  // phi'' = (2 delta - xi^2) phi, phi(0) = 1, phi'(0) = 0, integrated by RK4.
  auto shoot = [](double delta, double xi_end) {
    double y = 1.0, yp = 0.0, x = 0.0;
    const int steps = 200000;
    const double h = xi_end / steps;
    auto acc = [&](double xx, double yy) { return (2.0 * delta - xx * xx) * yy; };
    for (int i = 0; i < steps; ++i) {
      const double k1y = yp, k1p = acc(x, y);
      const double k2y = yp + 0.5 * h * k1p, k2p = acc(x + 0.5 * h, y + 0.5 * h * k1y);
      const double k3y = yp + 0.5 * h * k2p, k3p = acc(x + 0.5 * h, y + 0.5 * h * k2y);
      const double k4y = yp + h * k3p, k4p = acc(x + h, y + h * k3y);
      y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
      yp += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
      x += h;
    }
    return y;
  };
  CHECK(summit_ground_kummer(0.0, 1.0) == doctest::Approx(shoot(0.0, 1.0)).epsilon(1e-9));
  CHECK(summit_ground_kummer(0.7, 2.4) == doctest::Approx(shoot(0.7, 2.4)).epsilon(1e-9));
  CHECK(summit_ground_kummer(-0.5, 3.1) ==
        doctest::Approx(shoot(-0.5, 3.1)).epsilon(1e-9));
}

TEST_CASE("summit state satisfies its ODE pointwise") {
  const double h = 4e-3;
  for (double delta : {-0.4, 0.3, 1.1}) {
    for (double xi : {0.2, 1.1, 2.6, 3.8}) {
      auto f = [delta](double t) { return summit_ground_kummer(delta, t); };
      const double lhs = second_derivative(f, xi, h);
      const double rhs = (2.0 * delta - xi * xi) * f(xi);
      const double scale = std::abs(lhs) + std::abs(rhs) + std::abs(f(xi)) + 1e-30;
      CHECK(std::abs(lhs - rhs) / scale <= 1e-7);
    }
  }
}

TEST_CASE("summit envelope enforced") {
  CHECK_THROWS_AS(summit_ground_kummer(0.3, 6.0), ConfigError);
}

TEST_CASE("stitched eigenvalue: summit state matched to the well tail") {
  // Ground deficit of the symmetric piecewise well from the analytic pieces:
  // match log-derivatives of the Kummer summit state and the decaying
  // parabolic-cylinder tail at the seam, then compare with the grid solver.
  const double xi1 = 1.2, beta = 1.0;
  const auto well = PiecewiseWell::symmetric(xi1, beta);
  const double seam = well.seam_right();
  const double v0 = well.barrier_right();

  // Wronskian-style mismatch phi' D - phi D' stays finite through zeros of
  // either factor; its sign change marks a joint eigenvalue.
  auto mismatch = [&](double delta) {
    const double h = 1e-6;
    const double phi = summit_ground_kummer(delta, seam);
    const double dphi = (summit_ground_kummer(delta, seam + h) -
                         summit_ground_kummer(delta, seam - h)) /
                        (2.0 * h);
    const double nu = beta * beta * (v0 - delta) - 0.5;
    const double u = std::sqrt(2.0) * (seam - xi1) / beta;
    const double dw = std::sqrt(2.0) / beta;
    const double d = parabolic_cylinder_d(nu, u);
    const double dd = (nu * parabolic_cylinder_d(nu - 1.0, u) - 0.5 * u * d) * dw;
    return dphi * d - phi * dd;
  };

  // the ground state carries the largest deficit: scan downward from the
  // barrier top and bisect the first sign change
  double lo = v0 - 1e-3, hi = lo;
  double f_hi = mismatch(hi);
  bool bracketed = false;
  for (int i = 1; i <= 200; ++i) {
    lo = v0 - 1e-3 - 0.01 * i;
    const double f_lo = mismatch(lo);
    if (f_lo * f_hi <= 0.0) {
      bracketed = true;
      break;
    }
    hi = lo;
    f_hi = f_lo;
  }
  REQUIRE(bracketed);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((mismatch(lo) < 0.0) == (mismatch(mid) < 0.0))
      lo = mid;
    else
      hi = mid;
  }
  const double delta_stitched = 0.5 * (lo + hi);

  WellSolveOptions opts;
  opts.n_points = 8001;
  opts.with_vectors = false;
  const double delta_grid = solve_well(well, 2, opts).delta_plus();
  CHECK(delta_stitched == doctest::Approx(delta_grid).epsilon(2e-4));
}

}  // TEST_SUITE
