#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spingap/banded.hpp"
#include "spingap/parallel.hpp"
#include "spingap/spinspace.hpp"

namespace spingap {

/// V(z) = -sqrt(1-z^2) - (kappa/gamma) z^p + ((1-kappa)/gamma)(1-z^2),
/// with gamma = Gamma/(1-Gamma). Energies are in transverse-field units
/// (divide raw Hamiltonian energies by Gamma). Requires Gamma in (0, 1).
double potential_v(double z, const SpinParams& params);

/// V(z) = -sqrt(1-z^2) - ( (1-|Gamma_z|) z^2 / gamma_x + z Gamma_z ),
/// gamma_x = Gamma_x/(1-Gamma_x). Requires Gamma_x in (0, 1).
double potential_v_lmg(double z, double gamma_x, double gamma_z);

/// M^{-1}(z) = sqrt(1-z^2) - 2 (1-z^2) (1-kappa)/gamma. Vanishes at z = +-1;
/// crosses zero at the origin exactly when gamma = 2(1-kappa).
double inverse_mass(double z, const SpinParams& params);

/// d^2 V / dz^2 for the p = 3 potential:
/// (1-z^2)^{-3/2} - 6 (kappa/gamma) z - 2 (1-kappa)/gamma.
double potential_v_zz(double z, const SpinParams& params);

/// 1D eigenproblem data on a uniform interior grid of (-1, 1):
/// [ P M^{-1} P / 2 + V ] psi = (E/Gamma) psi with P = -i hbar d/dz and
/// hbar = 1/j. Dirichlet conditions at z = +-1 (the endpoints are excluded
/// from the grid; the inverse mass vanishes there).
struct ContinuumProblem {
  std::vector<double> grid;        // strictly ascending, uniform
  std::vector<double> potential;   // V at grid nodes
  std::vector<double> inv_mass;    // M^{-1} at grid nodes
  std::vector<double> inv_mass_edges;  // optional: M^{-1} at the N+1 midpoints
  double hbar_eff = 0.0;
  double spacing = 0.0;

  void validate() const;
};

/// Default resolution: max(1001, 20 j + 1) interior points.
std::size_t default_grid_points(TotalSpin j);

/// Assembles the continuum problem for the driven p-spin model at the given
/// control point, sampling the exact inverse mass at staggered midpoints.
ContinuumProblem make_spin_problem(const SpinParams& params, std::size_t n_points = 0);

/// Symmetric tridiagonal discretization with the staggered-midpoint kinetic
/// stencil  (hbar^2/2h^2) [ Minv_{i+1/2}(psi_{i+1}-psi_i)
///                         - Minv_{i-1/2}(psi_i-psi_{i-1}) ]  plus diagonal V.
/// Throws NegativeMassError when the inverse mass is negative anywhere on
/// the interior grid, reporting the zero-crossing locations.
BandedSymmetricMatrix discretize(const ContinuumProblem& problem);

enum class CellStatus {
  ok,
  excluded_gamma_endpoint,  // Gamma = 0 or 1: no continuum counterpart
  excluded_negative_mass,
  excluded_small_kappa,
};

struct ComparisonCell {
  double gamma_field = 0.0;
  double kappa = 0.0;
  double spin_gap = 0.0;       // Delta01 of the spin matrix (raw units)
  double continuum_gap = 0.0;  // Delta01 of the continuum model, scaled by Gamma
  double rel_diff = 0.0;
  CellStatus status = CellStatus::ok;
};

struct ComparisonReport {
  std::vector<ComparisonCell> cells;  // row-major over (kappa, gamma)
  std::size_t n_gamma = 0;
  std::size_t n_kappa = 0;
  double median_rel_diff = 0.0;  // over cells with status ok
  std::size_t n_ok = 0;
};

/// Per-point relative gap difference between the spin matrix and its
/// continuum image. Cells at Gamma endpoints, inside the negative-mass
/// region, or with kappa below `kappa_cutoff` are flagged and excluded from
/// the summary statistic.
ComparisonReport continuum_vs_spin_report(TotalSpin j, int power,
                                          std::span<const double> gamma_grid,
                                          std::span<const double> kappa_grid,
                                          double kappa_cutoff = 0.05,
                                          const ParallelMap& par = {});

}  // namespace spingap
