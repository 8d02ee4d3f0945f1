#include "spingap/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spingap/errors.hpp"
#include "spingap/spectrum.hpp"

namespace spingap {

namespace {

double require_ratio(const SpinParams& params) {
  const double gamma = params.control.gamma_field;
  if (!(gamma > 0.0 && gamma < 1.0))
    throw ConfigError("continuum potential requires Gamma in (0, 1)");
  return params.annealing_ratio();
}

}  // namespace

double potential_v(double z, const SpinParams& params) {
  if (std::abs(z) > 1.0) throw ConfigError("potential_v: |z| must be <= 1");
  const double ratio = require_ratio(params);
  const double kappa = params.control.kappa;
  const double one_minus_z2 = 1.0 - z * z;
  return -std::sqrt(one_minus_z2) - (kappa / ratio) * std::pow(z, params.power) +
         ((1.0 - kappa) / ratio) * one_minus_z2;
}

double potential_v_lmg(double z, double gamma_x, double gamma_z) {
  if (std::abs(z) > 1.0) throw ConfigError("potential_v_lmg: |z| must be <= 1");
  if (!(gamma_x > 0.0 && gamma_x < 1.0))
    throw ConfigError("potential_v_lmg requires Gamma_x in (0, 1)");
  if (std::abs(gamma_z) > 1.0)
    throw ConfigError("potential_v_lmg requires |Gamma_z| <= 1");
  const double ratio = gamma_x / (1.0 - gamma_x);
  return -std::sqrt(1.0 - z * z) -
         ((1.0 - std::abs(gamma_z)) * z * z / ratio + z * gamma_z);
}

double inverse_mass(double z, const SpinParams& params) {
  if (std::abs(z) > 1.0) throw ConfigError("inverse_mass: |z| must be <= 1");
  const double ratio = require_ratio(params);
  const double one_minus_z2 = 1.0 - z * z;
  return std::sqrt(one_minus_z2) -
         2.0 * one_minus_z2 * (1.0 - params.control.kappa) / ratio;
}

double potential_v_zz(double z, const SpinParams& params) {
  if (std::abs(z) >= 1.0) throw ConfigError("potential_v_zz: |z| must be < 1");
  if (params.power != 3) throw ConfigError("potential_v_zz: implemented for p = 3");
  const double ratio = require_ratio(params);
  const double kappa = params.control.kappa;
  return std::pow(1.0 - z * z, -1.5) - 6.0 * (kappa / ratio) * z -
         2.0 * (1.0 - kappa) / ratio;
}

void ContinuumProblem::validate() const {
  const std::size_t n = grid.size();
  if (n < 3) throw ConfigError("ContinuumProblem: need at least 3 grid points");
  if (potential.size() != n || inv_mass.size() != n)
    throw ConfigError("ContinuumProblem: array sizes disagree");
  if (!inv_mass_edges.empty() && inv_mass_edges.size() != n + 1)
    throw ConfigError("ContinuumProblem: midpoint array must have N+1 entries");
  if (!(hbar_eff > 0.0)) throw ConfigError("ContinuumProblem: hbar_eff must be positive");
  if (!(spacing > 0.0)) throw ConfigError("ContinuumProblem: spacing must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(potential[i]) || !std::isfinite(inv_mass[i]))
      throw ConfigError("ContinuumProblem: non-finite samples");
    if (i > 0 && std::abs((grid[i] - grid[i - 1]) - spacing) > 1e-14)
      throw ConfigError("ContinuumProblem: grid is not uniform");
  }
}

std::size_t default_grid_points(TotalSpin j) {
  const std::size_t by_spin = static_cast<std::size_t>(20.0 * j.value()) + 1;
  return std::max<std::size_t>(1001, by_spin);
}

ContinuumProblem make_spin_problem(const SpinParams& params, std::size_t n_points) {
  params.validate();
  require_ratio(params);
  const std::size_t n = n_points > 0 ? n_points : default_grid_points(params.j);
  const double h = 2.0 / static_cast<double>(n + 1);

  ContinuumProblem problem;
  problem.hbar_eff = 1.0 / params.j.value();
  problem.spacing = h;
  problem.grid.resize(n);
  problem.potential.resize(n);
  problem.inv_mass.resize(n);
  problem.inv_mass_edges.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = -1.0 + static_cast<double>(i + 1) * h;
    problem.grid[i] = z;
    problem.potential[i] = potential_v(z, params);
    problem.inv_mass[i] = inverse_mass(z, params);
  }
  for (std::size_t i = 0; i <= n; ++i) {
    const double z = -1.0 + (static_cast<double>(i) + 0.5) * h;
    problem.inv_mass_edges[i] = inverse_mass(std::clamp(z, -1.0, 1.0), params);
  }
  return problem;
}

BandedSymmetricMatrix discretize(const ContinuumProblem& problem) {
  problem.validate();
  const std::size_t n = problem.grid.size();
  const double h = problem.spacing;

  std::vector<double> edges;
  if (!problem.inv_mass_edges.empty()) {
    edges = problem.inv_mass_edges;
  } else {
    // Fall back to neighbour averaging; one-sided at the walls.
    edges.resize(n + 1);
    edges[0] = problem.inv_mass.front();
    edges[n] = problem.inv_mass.back();
    for (std::size_t i = 1; i < n; ++i)
      edges[i] = 0.5 * (problem.inv_mass[i - 1] + problem.inv_mass[i]);
  }

  double scale = 0.0;
  for (double v : problem.inv_mass) scale = std::max(scale, std::abs(v));
  for (double v : edges) scale = std::max(scale, std::abs(v));
  const double tol = 1e-13 * std::max(scale, 1.0);

  std::vector<double> crossings;
  auto scan_sign = [&](const std::vector<double>& vals, const std::vector<double>& xs,
                       double x0, double dx) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] < -tol) {
        const double x = xs.empty() ? x0 + dx * static_cast<double>(i) : xs[i];
        const bool enters = (i == 0) || vals[i - 1] >= -tol;
        const bool leaves = (i + 1 == vals.size()) || vals[i + 1] >= -tol;
        if (enters || leaves) crossings.push_back(x);
      }
    }
  };
  scan_sign(problem.inv_mass, problem.grid, 0.0, 0.0);
  scan_sign(edges, {}, problem.grid.front() - 0.5 * h, h);
  if (!crossings.empty()) {
    std::sort(crossings.begin(), crossings.end());
    throw NegativeMassError(
        "discretize: inverse mass is negative on the interior grid; the "
        "quadratic-in-momentum model is invalid here",
        std::move(crossings));
  }

  const double kin = problem.hbar_eff * problem.hbar_eff / (2.0 * h * h);
  BandedSymmetricMatrix m(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = std::max(edges[i], 0.0);
    const double right = std::max(edges[i + 1], 0.0);
    m.band_entry(0, i) = problem.potential[i] + kin * (left + right);
    if (i + 1 < n) m.band_entry(1, i) = -kin * right;
  }
  return m;
}

ComparisonReport continuum_vs_spin_report(TotalSpin j, int power,
                                          std::span<const double> gamma_grid,
                                          std::span<const double> kappa_grid,
                                          double kappa_cutoff, const ParallelMap& par) {
  ComparisonReport report;
  report.n_gamma = gamma_grid.size();
  report.n_kappa = kappa_grid.size();
  report.cells.resize(gamma_grid.size() * kappa_grid.size());

  par.for_each_index(report.cells.size(), [&](std::size_t idx) {
    const std::size_t gi = idx % gamma_grid.size();
    const std::size_t ki = idx / gamma_grid.size();
    ComparisonCell& cell = report.cells[idx];
    cell.gamma_field = gamma_grid[gi];
    cell.kappa = kappa_grid[ki];

    SpinParams params{j, power, {cell.gamma_field, cell.kappa}};
    cell.spin_gap = lowest_eigenpairs(build_pspin_hamiltonian(params), 2).delta01();

    if (!(cell.gamma_field > 0.0 && cell.gamma_field < 1.0)) {
      cell.status = CellStatus::excluded_gamma_endpoint;
      return;
    }
    if (cell.kappa < kappa_cutoff) {
      cell.status = CellStatus::excluded_small_kappa;
      return;
    }
    // Negative interior mass appears first at z = 0.
    if (inverse_mass(0.0, params) < 0.0) {
      cell.status = CellStatus::excluded_negative_mass;
      return;
    }
    const auto matrix = discretize(make_spin_problem(params));
    cell.continuum_gap =
        cell.gamma_field * lowest_eigenpairs(matrix, 2).delta01();
    cell.rel_diff = std::abs(cell.continuum_gap - cell.spin_gap) /
                    std::max(cell.spin_gap, 1e-300);
  });

  std::vector<double> diffs;
  for (const auto& cell : report.cells)
    if (cell.status == CellStatus::ok) diffs.push_back(cell.rel_diff);
  report.n_ok = diffs.size();
  if (!diffs.empty()) {
    std::sort(diffs.begin(), diffs.end());
    const std::size_t mid = diffs.size() / 2;
    report.median_rel_diff = (diffs.size() % 2) ? diffs[mid]
                                                : 0.5 * (diffs[mid - 1] + diffs[mid]);
  }
  return report;
}

}  // namespace spingap
