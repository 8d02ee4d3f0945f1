#include "spingap/doublewell.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "spingap/banded.hpp"
#include "spingap/eigensolve.hpp"
#include "spingap/errors.hpp"

namespace spingap {

namespace {

double quartic(double b) { return b * b * b * b; }

// Golden-section minimization, same contract as in spectrum.cpp.
template <typename F>
double golden_min(F&& f, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

PiecewiseWell PiecewiseWell::build(double xi1, double xi2, double beta1, double beta2) {
  if (!(xi1 >= 0.0 && xi2 >= 0.0))
    throw ConfigError("PiecewiseWell: displacements must be non-negative");
  if (!(beta1 > 0.0 && beta2 > 0.0))
    throw ConfigError("PiecewiseWell: width ratios must be positive");
  return {xi1, xi2, beta1, beta2};
}

double PiecewiseWell::seam_left() const { return -xi1 / (1.0 + quartic(beta1)); }
double PiecewiseWell::seam_right() const { return xi2 / (1.0 + quartic(beta2)); }

double PiecewiseWell::barrier_left() const {
  return xi1 * xi1 / (2.0 * (1.0 + quartic(beta1)));
}
double PiecewiseWell::barrier_right() const {
  return xi2 * xi2 / (2.0 * (1.0 + quartic(beta2)));
}

bool PiecewiseWell::is_symmetric(double tol) const {
  return std::abs(xi1 - xi2) <= tol * std::max(1.0, std::abs(xi1)) &&
         std::abs(beta1 - beta2) <= tol * std::max(1.0, beta1);
}

double PiecewiseWell::potential(double xi) const {
  if (xi < seam_left()) {
    const double d = xi + xi1;
    return d * d / (2.0 * quartic(beta1)) - barrier_left();
  }
  if (xi > seam_right()) {
    const double d = xi - xi2;
    return d * d / (2.0 * quartic(beta2)) - barrier_right();
  }
  return -0.5 * xi * xi;
}

WellSpectrum solve_well(const PiecewiseWell& well, std::size_t k,
                        const WellSolveOptions& options) {
  if (k < 2) throw ConfigError("solve_well: need k >= 2");
  if (options.n_points < 201) throw ConfigError("solve_well: grid too coarse");

  const bool symmetric = well.is_symmetric();
  double lo = -well.xi1 - options.padding * well.beta1;
  double hi = well.xi2 + options.padding * well.beta2;
  std::size_t n = options.n_points;
  if (symmetric) {
    hi = std::max(hi, -lo);
    lo = -hi;
    if (n % 2 == 0) ++n;  // keep a node exactly at the summit
  }
  const double h = (hi - lo) / static_cast<double>(n - 1);

  WellSpectrum out;
  out.grid.resize(n);
  out.spacing = h;
  out.symmetric = symmetric;
  out.center_index = symmetric ? (n - 1) / 2 : 0;

  BandedSymmetricMatrix m(n, 1);
  const double kin = 1.0 / (2.0 * h * h);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = lo + static_cast<double>(i) * h;
    out.grid[i] = xi;
    m.band_entry(0, i) = well.potential(xi) + 2.0 * kin;
    if (i + 1 < n) m.band_entry(1, i) = -kin;
  }

  EigenPairs pairs = lowest_eigenpairs_banded(m, k, options.with_vectors);
  out.energies = std::move(pairs.values);
  out.epsilon = out.energies[0] + well.barrier_right();
  out.gap_ratio = out.energies[1] - out.energies[0];

  if (options.with_vectors) {
    const double inv_sqrt_h = 1.0 / std::sqrt(h);
    out.eigenfunctions.resize(k);
    for (std::size_t p = 0; p < k; ++p) {
      auto& v = pairs.vectors[p];
      if (symmetric) {
        // Project onto the expected parity (alternating, even ground state);
        // stabilizes numerically degenerate doublets.
        const double sign = (p % 2 == 0) ? 1.0 : -1.0;
        std::vector<double> proj(n);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          proj[i] = 0.5 * (v[i] + sign * v[n - 1 - i]);
          norm2 += proj[i] * proj[i];
        }
        if (norm2 > 0.25) {
          const double inv = 1.0 / std::sqrt(norm2);
          for (std::size_t i = 0; i < n; ++i) v[i] = proj[i] * inv;
        }
        // Sign conventions: even states positive at the summit, odd states
        // with positive slope there.
        const std::size_t c = out.center_index;
        const double probe = (p % 2 == 0) ? v[c] : v[c + 1];
        if (probe < 0.0)
          for (double& x : v) x = -x;
      } else {
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
          if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
        if (v[imax] < 0.0)
          for (double& x : v) x = -x;
      }
      out.eigenfunctions[p].resize(n);
      for (std::size_t i = 0; i < n; ++i) out.eigenfunctions[p][i] = v[i] * inv_sqrt_h;
    }
  }
  return out;
}

double gap_via_overlap_formula(const WellSpectrum& spectrum) {
  if (!spectrum.symmetric)
    throw ConfigError("gap_via_overlap_formula: requires a symmetric well "
                      "(parity-definite eigenfunctions)");
  if (spectrum.eigenfunctions.size() < 2)
    throw ConfigError("gap_via_overlap_formula: need the lowest doublet with vectors");

  const auto& even = spectrum.eigenfunctions[0];
  const auto& odd = spectrum.eigenfunctions[1];
  const std::size_t c = spectrum.center_index;
  const double h = spectrum.spacing;

  const double derivative = (odd[c + 1] - odd[c - 1]) / (2.0 * h);
  double semi_overlap = 0.0;
  for (std::size_t i = c; i < even.size(); ++i) semi_overlap += even[i] * odd[i];
  semi_overlap *= h;
  return even[c] * derivative / (2.0 * semi_overlap);
}

RayleighCheck rayleigh_check(const PiecewiseWell& well) {
  RayleighCheck out;
  out.margin_left = well.xi1 / well.beta1 - 1.0;
  out.margin_right = well.xi2 / well.beta2 - 1.0;
  out.separated = out.margin_left > 0.0 && out.margin_right > 0.0;
  return out;
}

namespace {

// Ground deficit of the symmetric well (xi, beta), Richardson-extrapolated
// over a grid doubling so the absolute value is trustworthy to ~1e-9.
double deficit_extrapolated(double xi, double beta) {
  WellSolveOptions coarse, fine;
  coarse.n_points = 4001;
  fine.n_points = 8001;
  coarse.with_vectors = fine.with_vectors = false;
  const auto well = PiecewiseWell::symmetric(xi, beta);
  const double d_coarse = solve_well(well, 2, coarse).delta_plus();
  const double d_fine = solve_well(well, 2, fine).delta_plus();
  return (4.0 * d_fine - d_coarse) / 3.0;
}

}  // namespace

double resonance_match(double beta1, double beta2, double xi1, double tol) {
  if (!(beta1 > 0.0 && beta2 > 0.0 && xi1 > 0.0))
    throw ConfigError("resonance_match: positive inputs required");

  const double target = deficit_extrapolated(xi1, beta1);
  auto f = [&](double xi2) { return deficit_extrapolated(xi2, beta2) - target; };

  // The deficit grows monotonically with the displacement; bracket upward.
  double lo = 1e-3, hi = std::max(xi1 * beta2 / beta1, 0.5);
  double flo = f(lo), fhi = f(hi);
  double scan_min = std::min(flo, fhi), scan_max = std::max(flo, fhi);
  int expand = 0;
  while (flo > 0.0 && lo > 1e-8) {
    lo *= 0.25;
    flo = f(lo);
    scan_min = std::min(scan_min, flo);
  }
  while (fhi < 0.0 && expand++ < 24) {
    hi *= 1.5;
    if (hi > 60.0) break;
    fhi = f(hi);
    scan_max = std::max(scan_max, fhi);
  }
  if (!(flo <= 0.0 && fhi >= 0.0))
    throw NumericalError(
        "resonance_match: no bracketing solution; scanned deficit offsets [" +
        std::to_string(scan_min + target) + ", " + std::to_string(scan_max + target) +
        "] around target " + std::to_string(target));

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= tol) return mid;
    if (fm < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * std::max(1.0, hi)) return 0.5 * (lo + hi);
  }
  return 0.5 * (lo + hi);
}

double iso_gap_beta_star(double xi1, double beta_lo, double beta_hi,
                         const WellSolveOptions& options) {
  WellSolveOptions opts = options;
  opts.with_vectors = false;
  auto neg_gap = [&](double beta) {
    return -solve_well(PiecewiseWell::symmetric(xi1, beta), 2, opts).gap_ratio;
  };
  return golden_min(neg_gap, beta_lo, beta_hi, 1e-4 * std::max(1.0, beta_hi));
}

IsoGapScan iso_gap_scan(std::span<const double> xi1_grid,
                        std::span<const double> beta_grid, const ParallelMap& par,
                        const WellSolveOptions& options) {
  if (xi1_grid.empty() || beta_grid.empty())
    throw ConfigError("iso_gap_scan: empty grid");
  IsoGapScan out;
  out.xi_axis.assign(xi1_grid.begin(), xi1_grid.end());
  out.beta_axis.assign(beta_grid.begin(), beta_grid.end());
  out.gap_ratio.assign(xi1_grid.size() * beta_grid.size(),
                       std::numeric_limits<double>::quiet_NaN());
  out.beta_star.resize(xi1_grid.size());
  out.gap_at_star.resize(xi1_grid.size());

  WellSolveOptions opts = options;
  opts.with_vectors = false;

  std::atomic<std::size_t> failures{0};
  par.for_each_index(out.gap_ratio.size(), [&](std::size_t idx) {
    const std::size_t xi = idx % xi1_grid.size();
    const std::size_t bi = idx / xi1_grid.size();
    try {
      out.gap_ratio[idx] =
          solve_well(PiecewiseWell::symmetric(xi1_grid[xi], beta_grid[bi]), 2, opts)
              .gap_ratio;
    } catch (const std::exception&) {
      failures.fetch_add(1, std::memory_order_relaxed);
    }
  });
  out.n_failed = failures.load();

  par.for_each_index(xi1_grid.size(), [&](std::size_t xi) {
    out.beta_star[xi] =
        iso_gap_beta_star(xi1_grid[xi], beta_grid.front(), beta_grid.back(), opts);
    out.gap_at_star[xi] =
        solve_well(PiecewiseWell::symmetric(xi1_grid[xi], out.beta_star[xi]), 2, opts)
            .gap_ratio;
  });
  return out;
}

double migration_time(double gap, double hbar_eff) {
  if (gap < 0.0) throw ConfigError("migration_time: negative gap");
  if (!(hbar_eff > 0.0)) throw ConfigError("migration_time: hbar_eff must be positive");
  if (gap == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * M_PI * hbar_eff / gap;
}

}  // namespace spingap
