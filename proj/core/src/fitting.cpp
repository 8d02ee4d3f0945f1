#include "spingap/fitting.hpp"

#include <cmath>
#include <vector>

#include "spingap/errors.hpp"

namespace spingap {

namespace {

ScalingFit fit_linear_log(std::span<const double> t, std::span<const double> y,
                          FitForm form) {
  const std::size_t n = t.size();
  if (n != y.size() || n < 2) throw ConfigError("scaling fit needs >= 2 matched points");
  std::vector<double> logy(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y[i] > 0.0)) throw ConfigError("scaling fit requires positive samples");
    logy[i] = std::log(y[i]);
  }
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    st += t[i];
    sy += logy[i];
    stt += t[i] * t[i];
    sty += t[i] * logy[i];
  }
  const double denom = n * stt - st * st;
  if (denom == 0.0) throw ConfigError("scaling fit: degenerate abscissae");
  ScalingFit fit;
  fit.form = form;
  fit.exponent = (n * sty - st * sy) / denom;
  const double intercept = (sy - fit.exponent * st) / n;
  fit.coefficient = std::exp(intercept);
  fit.n_points = n;
  for (std::size_t i = 0; i < n; ++i)
    fit.max_residual =
        std::max(fit.max_residual, std::abs(logy[i] - (intercept + fit.exponent * t[i])));
  return fit;
}

}  // namespace

ScalingFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  std::vector<double> logx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw ConfigError("power-law fit requires positive abscissae");
    logx[i] = std::log(x[i]);
  }
  return fit_linear_log(logx, y, FitForm::power_law);
}

ScalingFit fit_exponential(std::span<const double> x, std::span<const double> y) {
  return fit_linear_log(x, y, FitForm::exponential);
}

}  // namespace spingap
