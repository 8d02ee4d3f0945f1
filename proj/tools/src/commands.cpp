#include "spingap_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spingap/catalysis.hpp"
#include "spingap/continuum.hpp"
#include "spingap/doublewell.hpp"
#include "spingap/errors.hpp"
#include "spingap/pathfinder.hpp"
#include "spingap/spectrum.hpp"
#include "spingap_cli/dataset.hpp"

namespace spingap::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ParallelMap pool_for(const RunConfig& config) {
  return config.threads > 0 ? ParallelMap(config.threads) : ParallelMap::hardware();
}

TotalSpin first_spin(const RunConfig& config) {
  if (config.j_values.empty()) throw ConfigError("no j value given");
  return TotalSpin::from_value(config.j_values.front());
}

std::string fit_comment(const std::string& name, const ScalingFit& fit) {
  std::ostringstream out;
  out << "fit " << name << ": exponent=" << Dataset::format_value(fit.exponent)
      << " coefficient=" << Dataset::format_value(fit.coefficient)
      << " max_log_residual=" << Dataset::format_value(fit.max_residual)
      << " points=" << fit.n_points;
  return out.str();
}

void cmd_pairing(const RunConfig& config) {
  const double beta = config.beta_range.values().front();
  const auto xis = config.xi_range.values();
  constexpr std::size_t kDoublets = 4;  // E_k^{+-} for k <= 3
  std::vector<std::string> columns{"xi1", "barrier"};
  for (std::size_t k = 0; k < kDoublets; ++k) {
    columns.push_back("eps" + std::to_string(k) + "_even");
    columns.push_back("eps" + std::to_string(k) + "_odd");
  }
  Dataset data(columns);
  data.set_config_echo(config.echo());

  WellSolveOptions opts;
  opts.with_vectors = false;
  for (const double xi : xis) {
    const auto well = PiecewiseWell::symmetric(xi, beta);
    const auto spectrum = solve_well(well, 2 * kDoublets, opts);
    std::vector<double> row{xi, well.barrier_right()};
    for (std::size_t level = 0; level < 2 * kDoublets; ++level)
      row.push_back(spectrum.energies[level] + well.barrier_right());
    data.add_row(row);
  }
  data.write(config.out, config.format);
}

void cmd_isogap(const RunConfig& config) {
  const auto pool = pool_for(config);
  const auto xis = config.xi_range.values();
  const auto betas = config.beta_range.values();
  const IsoGapScan scan = iso_gap_scan(xis, betas, pool);

  Dataset raster({"xi1", "beta", "gap_ratio"});
  raster.set_config_echo(config.echo());
  for (std::size_t bi = 0; bi < betas.size(); ++bi)
    for (std::size_t xi = 0; xi < xis.size(); ++xi)
      raster.add_row(std::vector<double>{xis[xi], betas[bi],
                                         scan.gap_ratio[bi * xis.size() + xi]});
  raster.write(config.out, config.format);

  Dataset locus({"xi1", "beta_star", "gap_at_star", "beta_star_over_xi1"});
  locus.set_config_echo(config.echo());
  for (std::size_t xi = 0; xi < xis.size(); ++xi)
    locus.add_row(std::vector<double>{xis[xi], scan.beta_star[xi],
                                      scan.gap_at_star[xi],
                                      scan.beta_star[xi] / xis[xi]});
  locus.write(derived_path(config.out, "locus"), config.format);
}

void cmd_landscape(const RunConfig& config) {
  const auto landscape =
      scan_landscape(first_spin(config), config.power, config.gamma_range.values(),
                     config.kappa_range.values(), pool_for(config), 3);
  Dataset data({"gamma", "kappa", "delta01", "delta02"});
  data.set_config_echo(config.echo());
  for (std::size_t ki = 0; ki < landscape.n_kappa(); ++ki)
    for (std::size_t gi = 0; gi < landscape.n_gamma(); ++gi) {
      const auto& cell = landscape.at(gi, ki);
      data.add_row(std::vector<double>{landscape.gamma_axis[gi],
                                       landscape.kappa_axis[ki], cell.delta01(),
                                       cell.delta02()});
    }
  data.write(config.out, config.format);

  // Companion curve: the scale-free coefficient scan behind the saddle's
  // gap law, over the configured alpha grid.
  RayleighScanOptions scan;
  scan.alpha_lo = config.alpha_range.lo;
  scan.alpha_hi = config.alpha_range.hi;
  scan.n_alpha = std::max<std::size_t>(config.alpha_range.count, 5);
  const auto optimum = rayleigh_alpha_optimum(scan);
  Dataset alpha({"alpha", "weighted_gap", "gap_ratio"});
  alpha.set_config_echo(config.echo());
  alpha.add_comment("alpha_star=" + Dataset::format_value(optimum.alpha_star));
  alpha.add_comment("gap_law_coefficient=" +
                    Dataset::format_value(optimum.gap_law_coefficient));
  for (std::size_t i = 0; i < optimum.alphas.size(); ++i)
    alpha.add_row(std::vector<double>{
        optimum.alphas[i], optimum.weighted[i],
        optimum.weighted[i] / (optimum.alphas[i] * optimum.alphas[i])});
  alpha.write(derived_path(config.out, "alpha"), config.format);
}

void cmd_saddle(const RunConfig& config) {
  const auto pool = pool_for(config);
  Dataset data({"j", "gamma_c", "kappa_c", "delta_c", "kappa_clamped", "delta_c_j2"});
  data.set_config_echo(config.echo());
  std::vector<std::vector<double>> rows(config.j_values.size());
  pool.for_each_index(config.j_values.size(), [&](std::size_t i) {
    const double j = config.j_values[i];
    const SaddleResult s = saddle_search(TotalSpin::from_value(j), config.power);
    rows[i] = {j,
               s.control.gamma_field,
               s.control.kappa,
               s.gap,
               s.kappa_clamped ? 1.0 : 0.0,
               s.gap * j * j};
  });
  for (const auto& row : rows) data.add_row(row);
  data.write(config.out, config.format);
}

void cmd_scaling(const RunConfig& config) {
  if (config.j_values.size() < 2)
    throw ConfigError("scaling needs at least two j values (--j a,b,...)");
  const auto pool = pool_for(config);
  const auto& js = config.j_values;

  struct Row {
    SaddleSample saddle;
    double uncat = 0.0;
    double lmg = 0.0;
  };
  std::vector<Row> rows(js.size());
  pool.for_each_index(js.size(), [&](std::size_t i) {
    const TotalSpin j = TotalSpin::from_value(js[i]);
    const SaddleResult s = saddle_search(j, config.power);
    rows[i].saddle = {js[i], s.control.gamma_field, s.control.kappa, s.gap,
                      s.kappa_clamped};
    rows[i].uncat = min_gap_over_gamma(j, config.power, 1.0).gap;
    rows[i].lmg = parity_resolved_gaps(build_lmg_hamiltonian(j, 2.0 / 3.0, 0.0), 3)
                      .delta02();
  });

  Dataset data({"j", "kappa_c", "kappa_clamped", "delta_c", "delta_c_j2",
                "kappa_c_sqrtj", "delta_uncatalysed", "delta02_lmg"});
  data.set_config_echo(config.echo());

  std::vector<double> fit_j, fit_kappa, fit_gap, all_j, all_n, uncat, lmg;
  for (const auto& row : rows) {
    const double j = row.saddle.j;
    data.add_row(std::vector<double>{j, row.saddle.kappa_c,
                                     row.saddle.clamped ? 1.0 : 0.0, row.saddle.gap,
                                     row.saddle.gap * j * j,
                                     row.saddle.kappa_c * std::sqrt(j), row.uncat,
                                     row.lmg});
    all_j.push_back(j);
    all_n.push_back(2.0 * j);
    uncat.push_back(row.uncat);
    lmg.push_back(row.lmg);
    if (!row.saddle.clamped) {
      fit_j.push_back(j);
      fit_kappa.push_back(row.saddle.kappa_c);
      fit_gap.push_back(row.saddle.gap);
    }
  }
  if (fit_j.size() < 2)
    throw NumericalError("scaling: fewer than two unclamped saddles to fit");
  data.add_comment(fit_comment("kappa_c(j)", fit_power_law(fit_j, fit_kappa)));
  data.add_comment(fit_comment("delta_c(j)", fit_power_law(fit_j, fit_gap)));
  data.add_comment(fit_comment("delta_uncatalysed(j) [exponential]",
                               fit_exponential(all_j, uncat)));
  data.add_comment(fit_comment("delta02_lmg(n)", fit_power_law(all_n, lmg)));
  data.write(config.out, config.format);
}

void cmd_path(const RunConfig& config) {
  const auto pool = pool_for(config);
  const TotalSpin j = first_spin(config);
  std::vector<double> axis(config.raster);
  for (std::size_t i = 0; i < config.raster; ++i)
    axis[i] = static_cast<double>(i) / static_cast<double>(config.raster - 1);

  GraphOptions graph_options;
  if (config.edge_endpoint == "destination")
    graph_options.convention = EdgeEndpoint::destination;
  else if (config.edge_endpoint == "source")
    graph_options.convention = EdgeEndpoint::source;
  else if (config.edge_endpoint == "average")
    graph_options.convention = EdgeEndpoint::average;
  else
    throw ConfigError("edge-endpoint must be destination|source|average");

  const auto landscape = scan_landscape(j, config.power, axis, axis, pool, 2);
  ScheduleGraph graph = build_graph(landscape, graph_options);
  if (config.refine_ridge) refine_ridge_crossings(graph, {}, pool);
  const PathResult path = shortest_schedule(graph);

  Dataset data({"step", "gamma", "kappa", "delta01", "edge_cost", "cumulative_tstar"});
  data.set_config_echo(config.echo());
  data.add_comment("total_tstar=" + Dataset::format_value(path.total_time));
  data.add_comment("beeline_tstar=" + Dataset::format_value(beeline_time(graph)));
  for (std::size_t i = 0; i < path.cells.size(); ++i) {
    const GridIndex cell = path.cells[i];
    const double edge_cost =
        i == 0 ? 0.0 : path.cumulative[i] - path.cumulative[i - 1];
    data.add_row(std::vector<double>{static_cast<double>(i), axis[cell.gamma],
                                     axis[cell.kappa], graph.gap(cell), edge_cost,
                                     path.cumulative[i]});
  }
  data.write(config.out, config.format);
}

void cmd_lmg(const RunConfig& config) {
  const auto pool = pool_for(config);
  const TotalSpin j = first_spin(config);
  const auto gxs = config.gamma_range.values();
  const auto gzs = config.kappa_range.values();  // longitudinal field grid
  for (const double gz : gzs)
    if (std::abs(gz) > 1.0)
      throw ConfigError("lmg: Gamma_z grid must lie within [-1, 1]");

  Dataset data({"gamma_x", "gamma_z", "delta01", "delta02"});
  data.set_config_echo(config.echo());
  std::vector<std::vector<double>> rows(gxs.size() * gzs.size());
  pool.for_each_index(rows.size(), [&](std::size_t idx) {
    const std::size_t xi = idx % gxs.size();
    const std::size_t zi = idx / gxs.size();
    const auto h = build_lmg_hamiltonian(j, gxs[xi], gzs[zi]);
    const auto summary = lowest_eigenpairs(h, std::min<std::size_t>(3, j.dimension()));
    rows[idx] = {gxs[xi], gzs[zi], summary.delta01(),
                 summary.eigenvalues.size() > 2 ? summary.delta02() : kNaN};
  });
  for (const auto& row : rows) data.add_row(row);
  data.write(config.out, config.format);

  // Companion table: stationary points of the classical potential.
  Dataset extrema({"gamma_x", "gamma_z", "z_maximum", "z_min_left", "z_min_right"});
  extrema.set_config_echo(config.echo());
  for (const double gz : gzs) {
    for (const double gx : gxs) {
      if (!(gx > 0.0 && gx < 1.0)) {
        extrema.add_row(std::vector<double>{gx, gz, kNaN, kNaN, kNaN});
        continue;
      }
      const double ratio = gx / (1.0 - gx);
      auto slope = [&](double z) {
        return z / std::sqrt(1.0 - z * z) -
               2.0 * (1.0 - std::abs(gz)) * z / ratio - gz;
      };
      double z_max = kNaN, z_min_left = kNaN, z_min_right = kNaN;
      const int samples = 4001;
      double prev_z = -1.0 + 1e-9, prev_f = slope(prev_z);
      for (int i = 1; i < samples; ++i) {
        const double z = -1.0 + 1e-9 + (2.0 - 2e-9) * i / (samples - 1);
        const double f = slope(z);
        if (prev_f == 0.0 || prev_f * f < 0.0) {
          double lo = prev_z, hi = z;
          for (int b = 0; b < 80; ++b) {
            const double mid = 0.5 * (lo + hi);
            if ((slope(lo) <= 0.0) == (slope(mid) <= 0.0))
              lo = mid;
            else
              hi = mid;
          }
          const double root = 0.5 * (lo + hi);
          const double curvature = slope(root + 1e-6) - slope(root - 1e-6);
          if (curvature < 0.0)
            z_max = root;
          else if (root < 0.0)
            z_min_left = root;
          else
            z_min_right = root;
        }
        prev_z = z;
        prev_f = f;
      }
      extrema.add_row(std::vector<double>{gx, gz, z_max, z_min_left, z_min_right});
    }
  }
  extrema.write(derived_path(config.out, "extrema"), config.format);
}

void cmd_asymptotics(const RunConfig& config) {
  const double x = config.x_parameter;
  const double j = first_spin(config).value();
  Dataset data({"kappa",
                "z1_asym", "z1_exact",
                "zstar_asym", "zstar_exact",
                "v0_asym", "v0_exact",
                "v00_asym", "v00_exact",
                "omega0_asym", "omega0_exact",
                "omega1_asym", "omega1_exact",
                "omegastar_asym", "omegastar_exact",
                "invm0_asym", "invm0_exact",
                "invm1_asym", "invm1_exact",
                "invmstar_asym", "invmstar_exact",
                "beta1_asym", "beta1_exact",
                "beta2_asym", "beta2_exact",
                "xi1_asym", "xi1_exact",
                "xi2_asym", "xi2_exact"});
  data.set_config_echo(config.echo());

  for (const double kappa : config.kappa_range.values()) {
    const AsymptoticState a = small_kappa_state(kappa, x);
    const double gamma = gamma_zero(kappa) - 0.25 * x * x * kappa * kappa;
    const double gamma_field = gamma / (1.0 + gamma);
    const SpinParams params{TotalSpin::from_two_j(2), 3, {gamma_field, kappa}};
    const FerroExtrema ext = ferro_minimum(gamma, kappa);

    const double v_origin = potential_v(0.0, params);
    const double v_summit = potential_v(ext.z_star, params);
    const double v_ferro = potential_v(ext.z1, params);
    const double invm0 = inverse_mass(0.0, params);
    const double invm1 = inverse_mass(ext.z1, params);
    const double invms = inverse_mass(ext.z_star, params);
    const double omega0 = std::sqrt(potential_v_zz(0.0, params) * invm0);
    const double omega1 = std::sqrt(potential_v_zz(ext.z1, params) * invm1);
    const double omegas = std::sqrt(-potential_v_zz(ext.z_star, params) * invms);
    const double beta1 = std::sqrt(omegas * invm0 / (omega0 * invms));
    const double beta2 = std::sqrt(omegas * invm1 / (omega1 * invms));
    const double sigma_scale = std::sqrt(j * omegas / invms);  // 1/sigma*
    data.add_row(std::vector<double>{
        kappa,
        a.z1, ext.z1,
        a.z_star, ext.z_star,
        a.v0, v_summit - v_origin,
        a.v00, v_summit - v_ferro,
        a.omega0, omega0,
        a.omega1, omega1,
        a.omega_star, omegas,
        a.inv_m0, invm0,
        a.inv_m1, invm1,
        a.inv_m_star, invms,
        a.beta1, beta1,
        a.beta2, beta2,
        a.xi1(j), ext.z_star * sigma_scale,
        a.xi2(j), (ext.z1 - ext.z_star) * sigma_scale});
  }
  data.write(config.out, config.format);
}

void cmd_spinstats(const RunConfig& config) {
  const TotalSpin j = first_spin(config);
  const double kappa = config.kappa_range.values().front();
  Dataset data({"gamma", "kappa", "r", "theta", "delta_r", "theta_meanfield"});
  data.set_config_echo(config.echo());

  for (const double gamma : config.gamma_range.values()) {
    const SpinParams params{j, config.power, {gamma, kappa}};
    const auto summary = lowest_eigenpairs(build_pspin_hamiltonian(params), 2, true);
    const auto stats = spin_vector_stats(*summary.ground_state, j);

    // global mean-field minimizer over the upper hemisphere
    double best_theta = 0.0, best_energy = mean_field_energy(0.0, params);
    const int scan = 2001;
    for (int i = 1; i < scan; ++i) {
      const double theta = 0.5 * M_PI * i / (scan - 1);
      const double e = mean_field_energy(theta, params);
      if (e < best_energy) {
        best_energy = e;
        best_theta = theta;
      }
    }
    data.add_row(std::vector<double>{gamma, kappa, stats.r, stats.theta, stats.delta_r,
                                     best_theta});
  }
  data.write(config.out, config.format);
}

}  // namespace

void run_command(const RunConfig& config) {
  if (config.command == "pairing")
    cmd_pairing(config);
  else if (config.command == "isogap")
    cmd_isogap(config);
  else if (config.command == "landscape")
    cmd_landscape(config);
  else if (config.command == "saddle")
    cmd_saddle(config);
  else if (config.command == "scaling")
    cmd_scaling(config);
  else if (config.command == "path")
    cmd_path(config);
  else if (config.command == "lmg")
    cmd_lmg(config);
  else if (config.command == "asymptotics")
    cmd_asymptotics(config);
  else if (config.command == "spinstats")
    cmd_spinstats(config);
  else
    throw ConfigError("unknown command '" + config.command + "'");
}

}  // namespace spingap::cli
