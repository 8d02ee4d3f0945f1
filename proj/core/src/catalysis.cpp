#include "spingap/catalysis.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "spingap/continuum.hpp"
#include "spingap/doublewell.hpp"
#include "spingap/errors.hpp"
#include "spingap/spectrum.hpp"

namespace spingap {

double gamma_zero(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw ConfigError("gamma_zero: kappa must lie in (0, 1]");
  const double k = kappa;
  const double inner = k * (19.0 * k - 2.0) + 1.0;
  const double radicand = 169.0 * k * k * k * k - 172.0 * k * k * k + 78.0 * k * k +
                          8.0 * k - 2.0 * (k - 1.0) * std::pow(inner, 1.5) - 2.0;
  if (radicand < 0.0) throw NumericalError("gamma_zero: negative radicand");
  return std::sqrt(radicand) / (6.0 * k);
}

double gamma_second_order(double kappa) { return 2.0 * (1.0 - kappa); }

FerroExtrema ferro_minimum(double gamma, double kappa, int power) {
  if (power != 3) throw ConfigError("ferro_minimum: implemented for p = 3");
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw ConfigError("ferro_minimum: kappa must lie in (0, 1]");
  if (!(gamma > 0.0)) throw ConfigError("ferro_minimum: gamma must be positive");

  // Stationarity of V away from the origin, multiplied through by cos(theta):
  // G(theta) = gamma - 3 kappa sin(theta)cos(theta) - 2(1-kappa) cos(theta).
  // G > 0 at both ends of (0, pi/2); the summit and the minimum are its two
  // roots when gamma < gamma_0.
  auto g = [&](double theta) {
    return gamma - 3.0 * kappa * std::sin(theta) * std::cos(theta) -
           2.0 * (1.0 - kappa) * std::cos(theta);
  };

  // Locate the interior minimum of G by golden section.
  constexpr double inv_phi = 0.6180339887498949;
  double a = 1e-12, b = 0.5 * M_PI - 1e-12;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  while (b - a > 1e-13) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    }
  }
  const double theta_mid = 0.5 * (a + b);
  const double g_min = g(theta_mid);
  if (g_min > 1e-11)
    throw NumericalError("ferro_minimum: no ferromagnetic minimum (gamma above "
                         "gamma_0)");

  FerroExtrema out;
  if (std::abs(g_min) <= 1e-11) {
    // Birth point: summit and minimum merge.
    out.theta_star = out.theta1 = theta_mid;
  } else {
    auto bisect = [&](double lo, double hi) {
      const bool lo_negative = g(lo) <= 0.0;
      for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((g(mid) <= 0.0) == lo_negative)
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    };
    // Below the second-order boundary the origin is itself the summit.
    out.theta_star = (g(1e-12) <= 0.0) ? 0.0 : bisect(1e-12, theta_mid);
    out.theta1 = bisect(theta_mid, 0.5 * M_PI - 1e-12);
  }
  out.z_star = std::sin(out.theta_star);
  out.z1 = std::sin(out.theta1);
  return out;
}

double gamma_classical(double kappa, int power) {
  if (power != 3) throw ConfigError("gamma_classical: implemented for p = 3");
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw ConfigError("gamma_classical: kappa must lie in (0, 1]");

  const double lo = gamma_second_order(kappa);
  const double hi = gamma_zero(kappa);
  auto depth_offset = [&](double gamma) {
    // V(z1) - V(0) in transverse-field units
    const FerroExtrema ext = ferro_minimum(gamma, kappa, power);
    const double gamma_field = gamma / (1.0 + gamma);
    SpinParams params{TotalSpin::from_two_j(2), power, {gamma_field, kappa}};
    return potential_v(ext.z1, params) - potential_v(0.0, params);
  };

  double a = std::max(lo, 1e-9) + 1e-9, b = hi - 1e-12;
  // guard: the offset must change sign across (gamma_2, gamma_0)
  double fa = depth_offset(a), fb = depth_offset(b);
  if (!(fa < 0.0 && fb > 0.0))
    throw NumericalError("gamma_classical: bracketing failure on (gamma_2, gamma_0)");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = depth_offset(mid);
    if (fm < 0.0)
      a = mid;
    else
      b = mid;
    if (b - a < 1e-13 * std::max(1.0, b)) break;
  }
  return 0.5 * (a + b);
}

double AsymptoticState::xi1(double j) const {
  return std::sqrt(j) * std::pow(x / 3.0, 0.25) * (0.5 * (3.0 - x)) * kappa;
}

double AsymptoticState::xi2(double j) const {
  return std::sqrt(j) * std::pow(x, 1.25) * std::pow(3.0, -0.25) * kappa;
}

AsymptoticState small_kappa_state(double kappa, double x) {
  if (!(kappa > 0.0 && kappa <= 0.2))
    throw ConfigError("small_kappa_state: kappa must lie in (0, 0.2]");
  if (!(x > 0.0 && x <= 1.07))
    throw ConfigError("small_kappa_state: x must lie in (0, 1.07]");
  AsymptoticState s;
  s.kappa = kappa;
  s.x = x;
  const double k2 = kappa * kappa;
  const double k4 = k2 * k2;
  s.z1 = 0.5 * (3.0 + x) * kappa;
  s.z_star = 0.5 * (3.0 - x) * kappa;
  s.v0 = (k4 / 128.0) * std::pow(3.0 - x, 3) * (1.0 + x);
  s.v00 = std::pow(x, 3) * k4 / 8.0;
  s.omega0 = (9.0 - x * x) * k2 / 8.0;
  s.omega1 = 0.25 * std::sqrt(3.0 * x) * (3.0 + x) * k2;
  s.omega_star = 0.25 * std::sqrt(3.0 * x) * (3.0 - x) * k2;
  s.inv_m0 = s.omega0;  // m0 omega0 = 1 identically
  s.inv_m1 = 0.75 * (3.0 + x) * k2;
  s.inv_m_star = 0.75 * (3.0 - x) * k2;
  s.beta1 = std::pow(x / 3.0, 0.25);
  s.beta2 = 1.0 - (15.0 / 8.0) * x * k2;
  return s;
}

RayleighOptimum rayleigh_alpha_optimum(const RayleighScanOptions& options) {
  if (!(options.alpha_hi > options.alpha_lo) || options.n_alpha < 5)
    throw ConfigError("rayleigh_alpha_optimum: bad scan options");
  const double root3 = std::sqrt(3.0);
  const double inv_q = std::pow(3.0, -0.25);
  WellSolveOptions opts;
  opts.with_vectors = false;

  auto weighted_gap = [&](double alpha) {
    const PiecewiseWell well{alpha * inv_q, alpha * inv_q, 1.0, inv_q};
    return solve_well(well, 2, opts).gap_ratio * alpha * alpha;
  };

  RayleighOptimum out;
  out.alphas.resize(options.n_alpha);
  out.weighted.resize(options.n_alpha);
  for (std::size_t i = 0; i < options.n_alpha; ++i) {
    out.alphas[i] = options.alpha_lo + (options.alpha_hi - options.alpha_lo) *
                                           static_cast<double>(i) /
                                           static_cast<double>(options.n_alpha - 1);
    out.weighted[i] = weighted_gap(out.alphas[i]);
  }
  // First interior maximum of the weighted curve. Beyond it the fixed
  // parameter map drifts off resonance and the level difference stops being
  // a tunneling gap, so a later upturn of the raw curve is not a candidate.
  std::size_t best = options.n_alpha;
  for (std::size_t i = 1; i + 1 < options.n_alpha; ++i) {
    if (out.weighted[i] > out.weighted[i - 1] && out.weighted[i] >= out.weighted[i + 1]) {
      best = i;
      break;
    }
  }
  if (best >= options.n_alpha)
    throw NumericalError("rayleigh_alpha_optimum: no interior peak in the scan window");

  // Parabolic refinement through the grid peak, then one more pass.
  double a = out.alphas[best - 1], b = out.alphas[best], c = out.alphas[best + 1];
  double fa = out.weighted[best - 1], fb = out.weighted[best], fc = out.weighted[best + 1];
  for (int iter = 0; iter < 24; ++iter) {
    const double denom = (b - a) * (fb - fc) - (b - c) * (fb - fa);
    if (std::abs(denom) < 1e-300) break;
    double v = b - 0.5 * ((b - a) * (b - a) * (fb - fc) - (b - c) * (b - c) * (fb - fa)) /
                       denom;
    if (!(v > a && v < c) || std::abs(v - b) < 1e-7) break;
    const double fv = weighted_gap(v);
    if (fv > fb) {
      if (v < b) {
        c = b;
        fc = fb;
      } else {
        a = b;
        fa = fb;
      }
      b = v;
      fb = fv;
    } else {
      if (v < b) {
        a = v;
        fa = fv;
      } else {
        c = v;
        fc = fv;
      }
    }
  }
  out.alpha_star = b;
  out.weighted_peak = fb;
  out.gap_law_coefficient = 0.5 * root3 * fb;
  return out;
}

const RayleighOptimum& rayleigh_alpha_optimum_cached() {
  static RayleighOptimum cached;
  static std::once_flag flag;
  std::call_once(flag, [] { cached = rayleigh_alpha_optimum(); });
  return cached;
}

SaddleScalingResult fit_kappa_c(std::span<const double> j_list, const ParallelMap& par) {
  if (j_list.size() < 2) throw ConfigError("fit_kappa_c: need at least two j values");
  SaddleScalingResult out;
  std::vector<SaddleSample> samples(j_list.size());
  par.for_each_index(j_list.size(), [&](std::size_t i) {
    const TotalSpin j = TotalSpin::from_value(j_list[i]);
    const SaddleResult s = saddle_search(j, 3);
    samples[i] = {j.value(), s.control.gamma_field, s.control.kappa, s.gap,
                  s.kappa_clamped};
  });
  std::vector<double> js, kappas;
  for (const auto& s : samples) {
    out.samples.push_back(s);
    if (s.clamped) {
      out.excluded.push_back(s);
    } else {
      js.push_back(s.j);
      kappas.push_back(s.kappa_c);
    }
  }
  if (js.size() < 2)
    throw NumericalError("fit_kappa_c: fewer than two unclamped saddles to fit");
  out.fit = fit_power_law(js, kappas);
  return out;
}

GapScalingResult fit_gap_scaling(std::span<const double> j_list, GapScalingKind kind,
                                 const ParallelMap& par) {
  if (j_list.size() < 2) throw ConfigError("fit_gap_scaling: need at least two j values");
  GapScalingResult out;
  out.j_values.assign(j_list.begin(), j_list.end());
  out.gaps.resize(j_list.size());
  par.for_each_index(j_list.size(), [&](std::size_t i) {
    const TotalSpin j = TotalSpin::from_value(j_list[i]);
    switch (kind) {
      case GapScalingKind::catalysed:
        out.gaps[i] = saddle_search(j, 3).gap;
        break;
      case GapScalingKind::uncatalysed:
        // The first-order dip narrows like the gap itself; the minimizer
        // needs machine-level placement to resolve it at larger j.
        out.gaps[i] = min_gap_over_gamma(j, 3, 1.0, 1e-3, 1.0 - 1e-9, 1e-13, 257).gap;
        break;
      case GapScalingKind::lmg_delta02: {
        const auto h = build_lmg_hamiltonian(j, 2.0 / 3.0, 0.0);
        out.gaps[i] = parity_resolved_gaps(h, 3).delta02();
        break;
      }
    }
  });
  out.fit = (kind == GapScalingKind::uncatalysed)
                ? fit_exponential(out.j_values, out.gaps)
                : fit_power_law(out.j_values, out.gaps);
  return out;
}

QuantumWidthResult quantum_width_scan(std::span<const double> kappa_list, TotalSpin j,
                                      const ParallelMap& par) {
  if (kappa_list.empty()) throw ConfigError("quantum_width_scan: empty kappa list");
  QuantumWidthResult out;
  out.samples.resize(kappa_list.size());
  par.for_each_index(kappa_list.size(), [&](std::size_t i) {
    const double kappa = kappa_list[i];
    if (!(kappa > 0.0 && kappa <= 0.3))
      throw ConfigError("quantum_width_scan: kappa must lie in (0, 0.3]");
    WidthSample& s = out.samples[i];
    s.kappa = kappa;
    s.gamma_lower = gamma_second_order(kappa);
    s.gamma_upper = gamma_zero(kappa);

    // Search Gamma inside a padded image of (gamma_2, gamma_0).
    const double pad = 3.0 * (s.gamma_upper - s.gamma_lower) + 4.0 / j.value();
    const double glo = std::max(1e-3, (s.gamma_lower - pad) / (1.0 + s.gamma_lower - pad));
    const double ghi_ratio = s.gamma_upper + pad;
    const double ghi = ghi_ratio / (1.0 + ghi_ratio);
    const GammaMinimum m = min_gap_over_gamma(j, 3, kappa, glo, ghi, 1e-8, 257);
    if (m.at_lower_edge || m.at_upper_edge)
      throw NumericalError("quantum_width_scan: minimum-gap search hit the window "
                           "edge at kappa = " + std::to_string(kappa));
    s.gamma_star = m.gamma_field / (1.0 - m.gamma_field);
    s.width = s.gamma_upper - s.gamma_star;
    if (!(s.width > 0.0))
      throw NumericalError("quantum_width_scan: width not resolved at kappa = " +
                           std::to_string(kappa));
  });

  std::vector<double> kappas, widths;
  for (const auto& s : out.samples) {
    kappas.push_back(s.kappa);
    widths.push_back(s.width);
  }
  out.fit = fit_power_law(kappas, widths);
  return out;
}

}  // namespace spingap
