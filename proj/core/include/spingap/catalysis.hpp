#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spingap/fitting.hpp"
#include "spingap/parallel.hpp"
#include "spingap/spinspace.hpp"

namespace spingap {

/// Annealing ratio gamma_0(kappa) at which the ferromagnetic minimum is born
/// (closed form). Small-kappa expansion: 2(1-kappa) + (9/4) kappa^2 + O(k^3).
/// kappa = 0 is rejected.
double gamma_zero(double kappa);

/// Hidden second-order boundary gamma_2 = 2 (1 - kappa): the origin turns
/// from minimum to maximum, coinciding with the vanishing of the inverse
/// mass at z = 0.
double gamma_second_order(double kappa);

/// Equal-depth (classical first-order) ratio: the gamma in (gamma_2,
/// gamma_0) at which V(z1) = V(0). p = 3 only.
double gamma_classical(double kappa, int power = 3);

struct FerroExtrema {
  double z1 = 0.0;      // ferromagnetic minimum
  double z_star = 0.0;  // barrier summit between the minima
  double theta1 = 0.0;
  double theta_star = 0.0;
};

/// Locations of the nonzero stationary points of V for gamma < gamma_0:
/// solutions of gamma sec(theta) + 2 kappa - 2 = 3 kappa sin(theta).
/// Throws NumericalError when no ferromagnetic minimum exists.
FerroExtrema ferro_minimum(double gamma, double kappa, int power = 3);

/// Leading small-kappa values of every well parameter at the sweet spot
/// gamma = gamma_0 - (x kappa / 2)^2.
struct AsymptoticState {
  double kappa = 0.0;
  double x = 0.0;
  double z1 = 0.0;         // (3+x) kappa / 2
  double z_star = 0.0;     // (3-x) kappa / 2
  double v0 = 0.0;         // (kappa^4/128) (3-x)^3 (1+x)
  double v00 = 0.0;        // x^3 kappa^4 / 8
  double omega0 = 0.0;     // (9-x^2) kappa^2 / 8
  double omega1 = 0.0;     // (sqrt(3x)/4)(3+x) kappa^2
  double omega_star = 0.0; // (sqrt(3x)/4)(3-x) kappa^2
  double inv_m0 = 0.0;     // = omega0 (so m0 omega0 = 1)
  double inv_m1 = 0.0;     // (3/4)(3+x) kappa^2
  double inv_m_star = 0.0; // (3/4)(3-x) kappa^2
  double beta1 = 0.0;      // (x/3)^{1/4}
  double beta2 = 0.0;      // 1 - (15/8) x kappa^2

  double xi1(double j) const;  // sqrt(j) (x/3)^{1/4} ((3-x)/2) kappa
  double xi2(double j) const;  // sqrt(j) x^{5/4} 3^{-1/4} kappa
};

/// Requires 0 < kappa <= 0.2 and 0 < x <= 1.07.
AsymptoticState small_kappa_state(double kappa, double x);

struct RayleighOptimum {
  double alpha_star = 0.0;      // peak of gap_ratio * alpha^2
  double weighted_peak = 0.0;   // gap_ratio(alpha*) * alpha*^2
  double gap_law_coefficient = 0.0;  // (sqrt(3)/2) * weighted_peak -> Delta_c j^2
  std::vector<double> alphas;
  std::vector<double> weighted;  // gap_ratio * alpha^2 along the scan
};

struct RayleighScanOptions {
  double alpha_lo = 0.5;
  double alpha_hi = 4.0;
  std::size_t n_alpha = 36;
};

/// Scale-free scan over the Rayleigh coefficient: builds the asymmetric well
/// {xi1, beta1, xi2, beta2} = {a 3^{-1/4}, 1, a 3^{-1/4}, 3^{-1/4}}, weights
/// its gap ratio by a^2 (the hbar omega* factor), and refines the first
/// interior peak parabolically. (Past the peak the fixed map detunes from
/// resonance and the raw level difference is no longer a tunneling gap, so
/// only the first maximum is physical.)
RayleighOptimum rayleigh_alpha_optimum(const RayleighScanOptions& options = {});

/// Cached copy of the default scan; the coefficient feeds both scaling laws.
const RayleighOptimum& rayleigh_alpha_optimum_cached();

struct SaddleSample {
  double j = 0.0;
  double gamma_c = 0.0;
  double kappa_c = 0.0;
  double gap = 0.0;
  bool clamped = false;  // kappa_c pinned at 1 (no catalysis pays off)
};

struct SaddleScalingResult {
  ScalingFit fit;
  std::vector<SaddleSample> samples;   // everything computed
  std::vector<SaddleSample> excluded;  // clamped or failed points left out of the fit
};

/// kappa_c(j) power law from per-j saddle searches. Clamped points
/// (kappa_c = 1) are excluded from the fit and reported.
SaddleScalingResult fit_kappa_c(std::span<const double> j_list,
                                const ParallelMap& par = {});

enum class GapScalingKind {
  catalysed,    // saddle gap, power law (expect exponent -2)
  uncatalysed,  // kappa = 1 minimum gap, exponential (expect rate -0.175)
  lmg_delta02,  // LMG Delta02 at Gamma_x = 2/3, Gamma_z = 0 (expect -4/3 in n)
};

struct GapScalingResult {
  ScalingFit fit;
  std::vector<double> j_values;
  std::vector<double> gaps;
};

GapScalingResult fit_gap_scaling(std::span<const double> j_list, GapScalingKind kind,
                                 const ParallelMap& par = {});

struct WidthSample {
  double kappa = 0.0;
  double gamma_star = 0.0;  // argmin-gap ratio at fixed kappa
  double gamma_lower = 0.0; // gamma_2 bound
  double gamma_upper = 0.0; // gamma_0 bound
  double width = 0.0;       // gamma_0 - gamma_star
};

struct QuantumWidthResult {
  ScalingFit fit;  // width ~ kappa^e, expect e in [2, 3]
  std::vector<WidthSample> samples;
};

/// Scaling of the quantum-region width gamma_0 - gamma_* with kappa at fixed
/// j, where gamma_* is the minimum-gap ratio located by refined search.
QuantumWidthResult quantum_width_scan(std::span<const double> kappa_list, TotalSpin j,
                                      const ParallelMap& par = {});

}  // namespace spingap
