#pragma once

#include <span>

namespace spingap {

enum class FitForm {
  power_law,    // y = c * x^e   (least squares in log-log space)
  exponential,  // y = c * e^{e x} (least squares in semilog space)
};

struct ScalingFit {
  double exponent = 0.0;     // e above (the rate, for exponential form)
  double coefficient = 0.0;  // c above
  double max_residual = 0.0; // largest |log y - log fit| over the window
  std::size_t n_points = 0;
  FitForm form = FitForm::power_law;
};

/// Requires positive y (and positive x for the power law) and >= 2 points.
ScalingFit fit_power_law(std::span<const double> x, std::span<const double> y);
ScalingFit fit_exponential(std::span<const double> x, std::span<const double> y);

}  // namespace spingap
