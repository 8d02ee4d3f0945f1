#include "spingap/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spingap/eigensolve.hpp"
#include "spingap/errors.hpp"

namespace spingap {

namespace {

void fix_global_sign(std::vector<double>& v) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  if (v[imax] < 0.0)
    for (double& x : v) x = -x;
}

std::vector<double> reflected(const std::vector<double>& v) {
  return {v.rbegin(), v.rend()};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Golden-section minimization of f on [a, b] to tolerance tol in x.
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

double SpectralSummary::delta01() const {
  if (eigenvalues.size() < 2) throw ConfigError("delta01 needs at least 2 eigenvalues");
  return eigenvalues[1] - eigenvalues[0];
}

double SpectralSummary::delta02() const {
  if (eigenvalues.size() < 3) throw ConfigError("delta02 needs at least 3 eigenvalues");
  return eigenvalues[2] - eigenvalues[0];
}

SpectralSummary lowest_eigenpairs(const BandedSymmetricMatrix& matrix, std::size_t k,
                                  bool with_ground_state) {
  EigenPairs pairs = lowest_eigenpairs_banded(matrix, k, with_ground_state);
  SpectralSummary out;
  out.eigenvalues = std::move(pairs.values);
  if (with_ground_state) {
    fix_global_sign(pairs.vectors[0]);
    out.ground_state = std::move(pairs.vectors[0]);
  }
  return out;
}

SpectralSummary parity_resolved_gaps(const BandedSymmetricMatrix& matrix,
                                     std::size_t k) {
  const std::size_t n = matrix.dim();
  const double scale = std::max(1.0, matrix.inf_norm());
  for (std::size_t kk = 0; kk <= matrix.bandwidth(); ++kk)
    for (std::size_t i = 0; i + kk < n; ++i) {
      const double a = matrix.band_entry(kk, i);
      const double b = matrix.band_entry(kk, n - 1 - i - kk);
      if (std::abs(a - b) > 1e-12 * scale)
        throw ConfigError("parity_resolved_gaps: matrix does not commute with the "
                          "m -> -m reflection");
    }

  EigenPairs pairs = lowest_eigenpairs_banded(matrix, k, true);
  std::vector<int> labels(k, 0);

  const double cluster_tol = 1e-10 * scale;
  std::size_t i = 0;
  while (i < k) {
    std::size_t cluster_end = i + 1;
    while (cluster_end < k &&
           pairs.values[cluster_end] - pairs.values[cluster_end - 1] <= cluster_tol)
      ++cluster_end;
    const std::size_t size = cluster_end - i;
    if (size == 1) {
      const double s = dot(pairs.vectors[i], reflected(pairs.vectors[i]));
      if (std::abs(s) < 0.5)
        throw NumericalError("parity_resolved_gaps: ambiguous parity for level " +
                             std::to_string(i));
      labels[i] = s > 0 ? +1 : -1;
    } else if (size == 2) {
      // Rotate the numerically degenerate pair into reflection eigenstates.
      auto& u = pairs.vectors[i];
      auto& v = pairs.vectors[i + 1];
      const auto ru = reflected(u);
      const auto rv = reflected(v);
      const double s11 = dot(u, ru), s12 = dot(u, rv), s22 = dot(v, rv);
      const double phi = 0.5 * std::atan2(2.0 * s12, s11 - s22);
      std::vector<double> a(n), b(n);
      for (std::size_t t = 0; t < n; ++t) {
        a[t] = std::cos(phi) * u[t] + std::sin(phi) * v[t];
        b[t] = -std::sin(phi) * u[t] + std::cos(phi) * v[t];
      }
      const double sa = dot(a, reflected(a));
      // Even member listed first within a degenerate pair.
      if (sa >= 0) {
        u = std::move(a);
        v = std::move(b);
      } else {
        u = std::move(b);
        v = std::move(a);
      }
      labels[i] = +1;
      labels[i + 1] = -1;
    } else {
      throw NumericalError("parity_resolved_gaps: degenerate cluster larger than 2");
    }
    i = cluster_end;
  }

  SpectralSummary out;
  out.eigenvalues = std::move(pairs.values);
  fix_global_sign(pairs.vectors[0]);
  out.ground_state = std::move(pairs.vectors[0]);
  out.parity_labels = std::move(labels);
  return out;
}

const SpectralSummary& GapLandscape::at(std::size_t gamma_index,
                                        std::size_t kappa_index) const {
  return cells[kappa_index * gamma_axis.size() + gamma_index];
}

GapLandscape scan_landscape(TotalSpin j, int power, std::span<const double> gamma_grid,
                            std::span<const double> kappa_grid, const ParallelMap& par,
                            std::size_t k) {
  if (gamma_grid.empty() || kappa_grid.empty())
    throw ConfigError("scan_landscape: empty control grid");
  auto check_axis = [](std::span<const double> axis, const char* name) {
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (!(axis[i] >= 0.0 && axis[i] <= 1.0))
        throw ConfigError(std::string("scan_landscape: ") + name + " outside [0, 1]");
      if (i > 0 && !(axis[i] > axis[i - 1]))
        throw ConfigError(std::string("scan_landscape: ") + name + " not ascending");
    }
  };
  check_axis(gamma_grid, "gamma grid");
  check_axis(kappa_grid, "kappa grid");

  GapLandscape out;
  out.gamma_axis.assign(gamma_grid.begin(), gamma_grid.end());
  out.kappa_axis.assign(kappa_grid.begin(), kappa_grid.end());
  out.j = j;
  out.power = power;
  out.cells.resize(gamma_grid.size() * kappa_grid.size());

  const std::size_t ng = gamma_grid.size();
  par.for_each_index(out.cells.size(), [&](std::size_t idx) {
    const std::size_t gi = idx % ng;
    const std::size_t ki = idx / ng;
    SpinParams p{j, power, {gamma_grid[gi], kappa_grid[ki]}};
    try {
      out.cells[idx] = lowest_eigenpairs(build_pspin_hamiltonian(p),
                                         std::min<std::size_t>(k, j.dimension()));
    } catch (const std::exception& e) {
      throw NumericalError("landscape cell (Gamma=" + std::to_string(gamma_grid[gi]) +
                           ", kappa=" + std::to_string(kappa_grid[ki]) +
                           "): " + e.what());
    }
  });
  return out;
}

GammaMinimum min_gap_over_gamma(TotalSpin j, int power, double kappa, double gamma_lo,
                                double gamma_hi, double tol,
                                std::size_t coarse_points) {
  if (!(gamma_hi > gamma_lo)) throw ConfigError("min_gap_over_gamma: bad interval");
  auto gap_at = [&](double gamma) {
    SpinParams p{j, power, {gamma, kappa}};
    return lowest_eigenpairs(build_pspin_hamiltonian(p), 2).delta01();
  };

  std::size_t best = 0;
  double best_gap = 0.0;
  std::vector<double> gammas(coarse_points);
  for (std::size_t i = 0; i < coarse_points; ++i) {
    gammas[i] = gamma_lo + (gamma_hi - gamma_lo) * static_cast<double>(i) /
                               static_cast<double>(coarse_points - 1);
    const double g = gap_at(gammas[i]);
    if (i == 0 || g < best_gap) {
      best = i;
      best_gap = g;
    }
  }

  GammaMinimum out;
  if (best == 0 || best == coarse_points - 1) {
    out.gamma_field = gammas[best];
    out.gap = best_gap;
    out.at_lower_edge = (best == 0);
    out.at_upper_edge = (best == coarse_points - 1);
    return out;
  }

  const double a = gammas[best - 1];
  const double b = gammas[best + 1];
  out.gamma_field = golden_min(gap_at, a, b, tol);
  out.gap = gap_at(out.gamma_field);
  return out;
}

namespace {

SaddleResult saddle_search_impl(TotalSpin j, int power, const SaddleOptions& opt,
                                double kappa_seed_lo, double kappa_seed_hi) {
  auto inner = [&](double kappa) {
    return min_gap_over_gamma(j, power, kappa, 1e-3, 1.0 - 1e-9, opt.control_tol * 0.1,
                              opt.coarse_gamma);
  };
  auto inner_gap = [&](double kappa) { return inner(kappa).gap; };

  const std::size_t nk = opt.coarse_kappa;
  std::vector<double> kappas(nk);
  std::size_t best = 0;
  double best_gap = -1.0;
  for (std::size_t i = 0; i < nk; ++i) {
    kappas[i] = kappa_seed_lo + (kappa_seed_hi - kappa_seed_lo) *
                                    static_cast<double>(i) /
                                    static_cast<double>(nk - 1);
    const double g = inner_gap(kappas[i]);
    if (g > best_gap) {
      best = i;
      best_gap = g;
    }
  }

  double kappa_c;
  bool clamped = false;
  const double boundary_gap = (best == nk - 1) ? best_gap : inner_gap(kappa_seed_hi);
  if (best == nk - 1) {
    // Maximum on the kappa = 1 boundary; look for an interior peak just below.
    const double a = kappas[nk - 2];
    const double interior =
        golden_min([&](double x) { return -inner_gap(x); }, a, kappa_seed_hi,
                   opt.control_tol);
    if (inner_gap(interior) > boundary_gap) {
      kappa_c = interior;
    } else {
      kappa_c = kappa_seed_hi;
      clamped = true;
    }
  } else if (best == 0) {
    throw NumericalError("saddle_search: maximum sits on the low-kappa edge");
  } else {
    kappa_c = golden_min([&](double x) { return -inner_gap(x); }, kappas[best - 1],
                         kappas[best + 1], opt.control_tol);
  }

  const GammaMinimum win = inner(kappa_c);
  if (win.at_lower_edge || win.at_upper_edge)
    throw NumericalError("saddle_search: inner Gamma minimum hit the search boundary");

  SaddleResult out;
  out.control = {win.gamma_field, kappa_c};
  out.gap = win.gap;
  out.kappa_clamped = clamped;
  return out;
}

}  // namespace

SaddleResult saddle_search(TotalSpin j, int power, const SaddleOptions& options) {
  return saddle_search_impl(j, power, options, options.kappa_min, 1.0);
}

SaddleResult saddle_search(const GapLandscape& landscape, const SaddleOptions& options) {
  // Seed the kappa interval from the landscape's ridge structure: find the
  // per-row minimum gap, then the row maximizing it.
  const std::size_t ng = landscape.n_gamma(), nk = landscape.n_kappa();
  if (ng == 0 || nk == 0) throw ConfigError("saddle_search: empty landscape");
  std::size_t best_row = 0;
  double best_val = -1.0;
  for (std::size_t ki = 0; ki < nk; ++ki) {
    double row_min = landscape.at(0, ki).delta01();
    for (std::size_t gi = 1; gi < ng; ++gi)
      row_min = std::min(row_min, landscape.at(gi, ki).delta01());
    if (row_min > best_val) {
      best_val = row_min;
      best_row = ki;
    }
  }
  // A coarse raster can alias the narrow ridge, so the seed is trusted only
  // for the lower end of the kappa bracket (the upper end stays at 1), and
  // a seed that turns out to sit above the true peak falls back to the full
  // search interval.
  const std::size_t span = std::max<std::size_t>(2, nk / 8);
  const double lo = landscape.kappa_axis[best_row >= span ? best_row - span : 0];
  if (lo < 1.0 && lo > options.kappa_min) {
    SaddleOptions seeded = options;
    seeded.coarse_kappa = std::max<std::size_t>(17, options.coarse_kappa / 2);
    try {
      return saddle_search_impl(landscape.j, landscape.power, seeded, lo, 1.0);
    } catch (const NumericalError&) {
      // fall through to the unseeded interval
    }
  }
  return saddle_search(landscape.j, landscape.power, options);
}

}  // namespace spingap
