#include "spingap/pathfinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "spingap/errors.hpp"

namespace spingap {

namespace {

double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol) {
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

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double rel_tol,
                        double abs_tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double refined = left + right;
  if (depth <= 0 ||
      std::abs(refined - whole) <= std::max(rel_tol * std::abs(refined), abs_tol))
    return refined;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, rel_tol, 0.5 * abs_tol,
                          depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, rel_tol, 0.5 * abs_tol,
                          depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol = 0.0) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, rel_tol, abs_tol, 14);
}

// int_a^b dt / gap(t)^2 across an avoided crossing at t_star inside [a, b].
// The crossing core is far too narrow for quadrature at larger j, so the
// two-level model gap_model^2 = gap_min^2 + s^2 (t - t_star)^2 is integrated
// in closed form and only the smooth remainder is sampled.
double crossing_integral(const std::function<double(double)>& gap, double a, double b,
                         double t_star, double gap_min, double rel_tol,
                         double gap_floor) {
  const double dmin = std::max(gap_min, gap_floor);
  // local slope of the gap, probed where the model dominates the minimum
  double slope = 1.0;
  for (int pass = 0; pass < 2; ++pass) {
    const double d = std::min({30.0 * dmin / slope, t_star - a, b - t_star});
    if (!(d > 0.0)) break;
    const double g1 = gap(std::min(t_star + d, b));
    const double g2 = gap(std::max(t_star - d, a));
    const double g = std::max(g1, g2);
    if (g > dmin) slope = std::sqrt(g * g - dmin * dmin) / d;
    if (!(slope > 1e-8)) slope = 1e-8;
  }
  auto model_inv_sq = [&](double t) {
    const double dt = t - t_star;
    return 1.0 / (dmin * dmin + slope * slope * dt * dt);
  };
  // closed form: (1/(s dmin)) [atan(s (t - t*)/dmin)]_a^b
  const double analytic = (std::atan(slope * (b - t_star) / dmin) -
                           std::atan(slope * (a - t_star) / dmin)) /
                          (slope * dmin);
  auto remainder = [&](double t) {
    const double g = std::max(gap(t), gap_floor);
    return 1.0 / (g * g) - model_inv_sq(t);
  };
  return analytic + integrate(remainder, a, b, rel_tol, rel_tol * analytic);
}

}  // namespace

ScheduleGraph::ScheduleGraph(std::vector<double> gamma_axis,
                             std::vector<double> kappa_axis, std::vector<double> delta01,
                             TotalSpin j, int power, GraphOptions options)
    : gamma_axis_(std::move(gamma_axis)),
      kappa_axis_(std::move(kappa_axis)),
      delta01_(std::move(delta01)),
      j_(j),
      power_(power),
      options_(options) {
  if (gamma_axis_.empty() || kappa_axis_.empty())
    throw ConfigError("ScheduleGraph: empty axes");
  if (delta01_.size() != gamma_axis_.size() * kappa_axis_.size())
    throw ConfigError("ScheduleGraph: gap table size mismatch");
}

double ScheduleGraph::edge_weight(GridIndex a, GridIndex b) const {
  const bool horizontal = (a.kappa == b.kappa);
  const bool vertical = (a.gamma == b.gamma);
  if (horizontal == vertical ||
      (horizontal && std::max(a.gamma, b.gamma) - std::min(a.gamma, b.gamma) != 1) ||
      (vertical && std::max(a.kappa, b.kappa) - std::min(a.kappa, b.kappa) != 1))
    throw ConfigError("edge_weight: cells are not 4-neighbours");

  if (horizontal) {
    const auto key = std::make_pair(a.kappa, std::min(a.gamma, b.gamma));
    if (const auto it = tolls_.find(key); it != tolls_.end()) return it->second;
  } else {
    const auto key = std::make_pair(a.gamma, std::min(a.kappa, b.kappa));
    if (const auto it = vertical_tolls_.find(key); it != vertical_tolls_.end())
      return it->second;
  }

  double inv_gap_sq;
  const double gap_dst = gap(b), gap_src = gap(a);
  switch (options_.convention) {
    case EdgeEndpoint::destination:
      if (gap_dst < options_.sentinel_gap) return options_.sentinel_cost;
      inv_gap_sq = 1.0 / (gap_dst * gap_dst);
      break;
    case EdgeEndpoint::source:
      if (gap_src < options_.sentinel_gap) return options_.sentinel_cost;
      inv_gap_sq = 1.0 / (gap_src * gap_src);
      break;
    case EdgeEndpoint::average:
      if (gap_dst < options_.sentinel_gap || gap_src < options_.sentinel_gap)
        return options_.sentinel_cost;
      inv_gap_sq = 0.5 * (1.0 / (gap_dst * gap_dst) + 1.0 / (gap_src * gap_src));
      break;
    default:
      inv_gap_sq = 0.0;
  }

  const double jv = j_.value();
  if (horizontal) {
    const double step = std::abs(gamma_axis_[a.gamma] - gamma_axis_[b.gamma]);
    return (2.0 - kappa_axis_[a.kappa]) * step * inv_gap_sq / jv;
  }
  const double step = std::abs(kappa_axis_[a.kappa] - kappa_axis_[b.kappa]);
  return (1.0 - gamma_axis_[a.gamma]) * step * inv_gap_sq / jv;
}

std::vector<GridIndex> ScheduleGraph::flagged_cells() const {
  std::vector<GridIndex> out;
  for (std::size_t ki = 0; ki < kappa_axis_.size(); ++ki)
    for (std::size_t gi = 0; gi < gamma_axis_.size(); ++gi)
      if (delta01_[ki * gamma_axis_.size() + gi] < options_.sentinel_gap)
        out.push_back({gi, ki});
  return out;
}

void ScheduleGraph::set_horizontal_toll(std::size_t row, std::size_t left_column,
                                        double weight) {
  if (row >= kappa_axis_.size() || left_column + 1 >= gamma_axis_.size())
    throw ConfigError("set_horizontal_toll: edge out of range");
  tolls_[{row, left_column}] = weight;
}

void ScheduleGraph::set_vertical_toll(std::size_t column, std::size_t lower_row,
                                      double weight) {
  if (column >= gamma_axis_.size() || lower_row + 1 >= kappa_axis_.size())
    throw ConfigError("set_vertical_toll: edge out of range");
  vertical_tolls_[{column, lower_row}] = weight;
}

ScheduleGraph build_graph(const GapLandscape& landscape, GraphOptions options) {
  if (landscape.cells.empty()) throw ConfigError("build_graph: empty landscape");
  std::vector<double> gaps(landscape.cells.size());
  for (std::size_t i = 0; i < landscape.cells.size(); ++i)
    gaps[i] = landscape.cells[i].delta01();
  return ScheduleGraph(landscape.gamma_axis, landscape.kappa_axis, std::move(gaps),
                       landscape.j, landscape.power, options);
}

PathResult shortest_schedule(const ScheduleGraph& graph) {
  const std::size_t ng = graph.n_gamma(), nk = graph.n_kappa();
  const std::size_t n = ng * nk;
  // Lexicographic (gamma index, kappa index) id for deterministic tie-breaks.
  auto id_of = [&](GridIndex c) { return c.gamma * nk + c.kappa; };
  auto cell_of = [&](std::size_t id) { return GridIndex{id / nk, id % nk}; };

  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev(n, n);
  std::vector<bool> done(n, false);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  const std::size_t start = id_of(graph.start());
  const std::size_t goal = id_of(graph.goal());
  dist[start] = 0.0;
  queue.push({0.0, start});

  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = true;
    if (u == goal) break;
    const GridIndex cu = cell_of(u);

    const auto relax = [&](GridIndex cv) {
      const std::size_t v = id_of(cv);
      if (done[v]) return;
      const double w = graph.edge_weight(cu, cv);
      const double nd = d + w;
      if (nd < dist[v] || (nd == dist[v] && u < prev[v])) {
        dist[v] = nd;
        prev[v] = u;
        queue.push({nd, v});
      }
    };
    if (cu.gamma > 0) relax({cu.gamma - 1, cu.kappa});
    if (cu.gamma + 1 < ng) relax({cu.gamma + 1, cu.kappa});
    if (cu.kappa > 0) relax({cu.gamma, cu.kappa - 1});
    if (cu.kappa + 1 < nk) relax({cu.gamma, cu.kappa + 1});
  }

  if (!done[goal]) throw NumericalError("shortest_schedule: goal unreachable");

  PathResult out;
  for (std::size_t v = goal; v != n; v = prev[v]) {
    out.cells.push_back(cell_of(v));
    if (v == start) break;
  }
  std::reverse(out.cells.begin(), out.cells.end());
  out.cumulative.resize(out.cells.size(), 0.0);
  for (std::size_t i = 1; i < out.cells.size(); ++i)
    out.cumulative[i] =
        out.cumulative[i - 1] + graph.edge_weight(out.cells[i - 1], out.cells[i]);
  out.total_time = out.cumulative.empty() ? 0.0 : out.cumulative.back();
  return out;
}

double beeline_time(const ScheduleGraph& graph) {
  const std::size_t row = graph.n_kappa() - 1;
  double total = 0.0;
  for (std::size_t gi = graph.n_gamma() - 1; gi > 0; --gi)
    total += graph.edge_weight({gi, row}, {gi - 1, row});
  return total;
}

void refine_ridge_crossings(ScheduleGraph& graph, const RidgeRefineOptions& options,
                            const ParallelMap& par) {
  const std::size_t ng = graph.n_gamma(), nk = graph.n_kappa();
  if (ng < 3 || nk < 2) return;
  const auto& gammas = graph.gamma_axis();
  const auto& kappas = graph.kappa_axis();
  const double jv = graph.j().value();
  const double gap_floor = graph.options().sentinel_gap;

  auto gap_at = [&](double gamma_field, double kappa) {
    SpinParams p{graph.j(), graph.power(), {gamma_field, kappa}};
    return lowest_eigenpairs(build_pspin_hamiltonian(p), 2).delta01();
  };

  struct Toll {
    std::size_t row, left;
    double weight;
  };
  std::vector<std::vector<Toll>> per_row(nk);
  std::vector<double> ridge_gamma(nk, std::numeric_limits<double>::quiet_NaN());

  par.for_each_index(nk, [&](std::size_t ki) {
    const double kappa = kappas[ki];
    auto row_gap = [&](double g) { return gap_at(g, kappa); };

    std::size_t gmin = 0;
    for (std::size_t gi = 1; gi < ng; ++gi)
      if (graph.gap({gi, ki}) < graph.gap({gmin, ki})) gmin = gi;
    if (gmin == 0 || gmin + 1 == ng) return;  // dip off the raster; leave as-is

    const double lo = gammas[gmin - 1], hi = gammas[gmin + 1];
    const double gamma_star = golden_min(row_gap, lo, hi, 1e-12);
    const double gap_min = row_gap(gamma_star);
    if (!(gap_min > 0.0)) return;
    ridge_gamma[ki] = gamma_star;

    // dip width: distance to triple the minimum on each side
    auto width_to = [&](double direction) {
      double step = (hi - lo) * 0.02;
      double x = gamma_star;
      for (int i = 0; i < 60; ++i) {
        x += direction * step;
        if (x <= gammas.front() || x >= gammas.back()) break;
        if (row_gap(x) >= 3.0 * gap_min) return std::abs(x - gamma_star);
        step *= 1.4;
      }
      return std::abs(hi - lo);
    };
    const double width = std::max(width_to(+1.0), width_to(-1.0));
    const double wlo = gamma_star - options.window_widths * width;
    const double whi = gamma_star + options.window_widths * width;

    auto inv_gap_sq = [&](double g) {
      const double d = std::max(row_gap(g), gap_floor);
      return 1.0 / (d * d);
    };
    for (std::size_t left = 0; left + 1 < ng; ++left) {
      const double a = gammas[left], b = gammas[left + 1];
      if (b < wlo || a > whi) continue;
      const double integral =
          (a < gamma_star && gamma_star < b)
              ? crossing_integral(row_gap, a, b, gamma_star, gap_min,
                                  options.simpson_rel_tol, gap_floor)
              : integrate(inv_gap_sq, a, b, options.simpson_rel_tol);
      per_row[ki].push_back({ki, left, (2.0 - kappa) * integral / jv});
    }
  });

  for (const auto& tolls : per_row)
    for (const auto& toll : tolls)
      graph.set_horizontal_toll(toll.row, toll.left, toll.weight);

  // The ridge curve Gamma*(kappa) also threads *between* rows: a vertical
  // step can carry the path across it. Re-price every vertical edge whose
  // column the curve crosses with the corresponding kappa-line integral.
  struct VToll {
    std::size_t column, row;
    double weight;
  };
  std::vector<std::pair<std::size_t, std::size_t>> crossings;  // (row, column)
  for (std::size_t ki = 0; ki + 1 < nk; ++ki) {
    const double a = ridge_gamma[ki], b = ridge_gamma[ki + 1];
    if (std::isnan(a) || std::isnan(b)) continue;
    for (std::size_t gi = 0; gi < ng; ++gi) {
      const double g = gammas[gi];
      if ((g - a) * (g - b) <= 0.0) crossings.push_back({ki, gi});
    }
  }
  std::vector<VToll> vtolls(crossings.size());
  par.for_each_index(crossings.size(), [&](std::size_t idx) {
    const auto [ki, gi] = crossings[idx];
    const double g = gammas[gi];
    auto column_gap = [&](double kappa) { return gap_at(g, kappa); };
    const double kappa_star =
        golden_min(column_gap, kappas[ki], kappas[ki + 1], 1e-12);
    const double gap_min = column_gap(kappa_star);
    const double integral = crossing_integral(column_gap, kappas[ki], kappas[ki + 1],
                                              kappa_star, gap_min,
                                              options.simpson_rel_tol, gap_floor);
    vtolls[idx] = {gi, ki, (1.0 - g) * integral / jv};
  });
  for (const auto& toll : vtolls)
    graph.set_vertical_toll(toll.column, toll.row, toll.weight);
}

TstarScalingResult tstar_scaling(std::span<const double> j_list,
                                 const TstarScalingOptions& options,
                                 const ParallelMap& par) {
  if (j_list.size() < 2) throw ConfigError("tstar_scaling: need at least two j values");
  if (options.raster < 9) throw ConfigError("tstar_scaling: raster too coarse");

  auto run_one = [&](double j_value, std::size_t raster) {
    const TotalSpin j = TotalSpin::from_value(j_value);
    std::vector<double> gamma_grid(raster), kappa_grid(raster);
    for (std::size_t i = 0; i < raster; ++i) {
      gamma_grid[i] = static_cast<double>(i) / static_cast<double>(raster - 1);
      kappa_grid[i] = static_cast<double>(i) / static_cast<double>(raster - 1);
    }
    const GapLandscape landscape =
        scan_landscape(j, 3, gamma_grid, kappa_grid, par, 2);
    ScheduleGraph graph = build_graph(landscape);
    if (options.refine_ridge) refine_ridge_crossings(graph, {}, par);
    TstarSample sample;
    sample.j = j_value;
    sample.tstar = shortest_schedule(graph).total_time;
    sample.beeline = beeline_time(graph);
    return sample;
  };

  TstarScalingResult out;
  for (double j : j_list) out.samples.push_back(run_one(j, options.raster));

  std::vector<double> js, ts;
  for (const auto& s : out.samples) {
    js.push_back(s.j);
    ts.push_back(s.tstar);
  }
  out.fit = fit_power_law(js, ts);

  if (options.resolution_check) {
    const double j_max = js.back();
    const double base = out.samples.back().tstar;
    const double doubled = run_one(j_max, 2 * options.raster - 1).tstar;
    out.resolution_shift = std::abs(doubled - base) / std::max(base, 1e-300);
    out.resolution_warning = out.resolution_shift > 0.10;
  }
  return out;
}

}  // namespace spingap
