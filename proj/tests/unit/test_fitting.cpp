#include <doctest.h>

#include <cmath>
#include <vector>

#include "spingap/errors.hpp"
#include "spingap/fitting.hpp"

using namespace spingap;

TEST_SUITE("fitting") {

TEST_CASE("power law recovers exact parameters") {
  std::vector<double> x{2.0, 4.0, 8.0, 16.0}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -2.0));
  const auto fit = fit_power_law(x, y);
  CHECK(fit.exponent == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.coefficient == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.max_residual <= 1e-12);
  CHECK(fit.form == FitForm::power_law);
}

TEST_CASE("exponential recovers exact parameters") {
  std::vector<double> x{10.0, 20.0, 40.0}, y;
  for (double v : x) y.push_back(0.5 * std::exp(-0.175 * v));
  const auto fit = fit_exponential(x, y);
  CHECK(fit.exponent == doctest::Approx(-0.175).epsilon(1e-12));
  CHECK(fit.coefficient == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(fit.form == FitForm::exponential);
}

TEST_CASE("residual reports the worst log deviation") {
  std::vector<double> x{1.0, 2.0, 4.0}, y{1.0, 0.5, 0.5};
  const auto fit = fit_power_law(x, y);
  CHECK(fit.max_residual > 0.05);
}

TEST_CASE("input validation") {
  std::vector<double> one{1.0};
  CHECK_THROWS_AS(fit_power_law(one, one), ConfigError);
  std::vector<double> x{1.0, 2.0}, bad{1.0, -2.0};
  CHECK_THROWS_AS(fit_power_law(x, bad), ConfigError);
  std::vector<double> negx{-1.0, 2.0}, y{1.0, 2.0};
  CHECK_THROWS_AS(fit_power_law(negx, y), ConfigError);
  CHECK_NOTHROW(fit_exponential(negx, y));  // abscissae may be negative here
}

}  // TEST_SUITE
