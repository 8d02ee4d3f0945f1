#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spingap/parallel.hpp"

namespace spingap {

/// Scale-free piecewise-parabolic double well. An inverted parabola of unit
/// curvature sits at the origin (the barrier summit; energies here are
/// referenced to it, U(0) = 0) and is stitched smoothly at the seams
/// -xi1/(1+beta1^4), +xi2/(1+beta2^4) onto upright parabolas of curvature
/// 1/beta_i^4 with minima at -xi1, +xi2. All lengths are in units of the
/// summit width sigma*, energies in quanta of hbar omega*.
struct PiecewiseWell {
  double xi1 = 1.0;
  double xi2 = 1.0;
  double beta1 = 1.0;
  double beta2 = 1.0;

  static PiecewiseWell symmetric(double xi, double beta) {
    return {xi, xi, beta, beta};
  }
  static PiecewiseWell build(double xi1, double xi2, double beta1, double beta2);

  double seam_left() const;   // -xi1 / (1 + beta1^4)
  double seam_right() const;  // +xi2 / (1 + beta2^4)
  double barrier_left() const;   // xi1^2 / (2 (1 + beta1^4)), summit above left bottom
  double barrier_right() const;
  bool is_symmetric(double tol = 1e-12) const;

  double potential(double xi) const;  // U with U(0) = 0 at the summit
};

struct WellSolveOptions {
  std::size_t n_points = 4001;  // grid resolution (forced odd for symmetric wells)
  double padding = 8.0;         // domain extends padding*beta_i beyond each minimum
  bool with_vectors = true;
};

/// Spectrum of -phi''/2 + U phi = E phi on the padded grid (unit mass,
/// Dirichlet walls). Energies are summit-referenced, so the deficit below
/// the summit is just -E.
struct WellSpectrum {
  std::vector<double> energies;  // ascending
  double epsilon = 0.0;          // ground energy above the (right) well bottom
  double gap_ratio = 0.0;        // energies[1] - energies[0] = Delta / (hbar omega*)
  std::vector<double> grid;
  double spacing = 0.0;
  std::vector<std::vector<double>> eigenfunctions;  // sum phi^2 h = 1
  bool symmetric = false;
  std::size_t center_index = 0;  // grid node at xi = 0 (symmetric solves only)

  double deficit(std::size_t level) const { return -energies.at(level); }
  double delta_plus() const { return deficit(0); }
  double delta_minus() const { return deficit(1); }
};

WellSpectrum solve_well(const PiecewiseWell& well, std::size_t k,
                        const WellSolveOptions& options = {});

/// Gap from the semi-overlap of the lowest doublet:
/// Delta/(hbar omega*) = phi+(0) phi-'(0) / ( 2 int_0^inf phi+ phi- ),
/// evaluated with quadrature consistent with the discretization, so it
/// reproduces the direct eigenvalue difference wherever the doublet is
/// resolved. Requires a spectrum solved on a symmetric well.
double gap_via_overlap_formula(const WellSpectrum& spectrum);

struct RayleighCheck {
  bool separated = false;  // both sides in the localized/tunneling regime
  double margin_left = 0.0;   // xi1/beta1 - 1
  double margin_right = 0.0;  // xi2/beta2 - 1
};

RayleighCheck rayleigh_check(const PiecewiseWell& well);

/// Solves for xi2 such that the symmetric well (xi2, beta2) has the same
/// ground-state deficit below the summit as the symmetric well (xi1, beta1):
/// the resonance condition for an asymmetric transition. Bisection in xi2
/// to |d delta+| <= tol; deficits are Richardson-extrapolated in the grid
/// spacing so the matched digits are physical.
double resonance_match(double beta1, double beta2, double xi1, double tol = 1e-8);

struct IsoGapScan {
  std::vector<double> xi_axis;
  std::vector<double> beta_axis;
  std::vector<double> gap_ratio;  // [ki*xi_axis.size() + xi] over (beta, xi); NaN on failure
  std::vector<double> beta_star;  // per xi: argmax of the gap over beta (refined)
  std::vector<double> gap_at_star;
  std::size_t n_failed = 0;
};

IsoGapScan iso_gap_scan(std::span<const double> xi1_grid,
                        std::span<const double> beta_grid, const ParallelMap& par = {},
                        const WellSolveOptions& options = {});

/// argmax over beta in [beta_lo, beta_hi] of the symmetric-well gap ratio at
/// fixed xi1 (golden-section refinement).
double iso_gap_beta_star(double xi1, double beta_lo, double beta_hi,
                         const WellSolveOptions& options = {});

/// Characteristic migration time 2*pi*hbar_eff / gap. A zero gap yields
/// +infinity as the distinguished "never" value.
double migration_time(double gap, double hbar_eff);

}  // namespace spingap
