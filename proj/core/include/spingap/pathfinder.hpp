#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "spingap/fitting.hpp"
#include "spingap/parallel.hpp"
#include "spingap/spectrum.hpp"

namespace spingap {

/// Which cell's gap enters an edge weight.
enum class EdgeEndpoint { destination, source, average };

struct GraphOptions {
  EdgeEndpoint convention = EdgeEndpoint::destination;
  double sentinel_gap = 1e-14;   // gaps below this are treated as closed
  double sentinel_cost = 1e28;   // finite stand-in for an impassable edge
};

struct GridIndex {
  std::size_t gamma = 0;
  std::size_t kappa = 0;
  bool operator==(const GridIndex&) const = default;
};

/// 4-connected raster of the control landscape with adiabatic-time edge
/// weights: a westward/eastward step of length |dGamma| on row kappa costs
/// (1/j)(2-kappa)|dGamma|/Delta01^2 and a north/south step on column Gamma
/// costs (1/j)(1-Gamma)|dKappa|/Delta01^2, the gap taken at the endpoint
/// selected by the convention. Start is the (Gamma=1, kappa=1) corner, goal
/// (Gamma=0, kappa=1).
class ScheduleGraph {
 public:
  ScheduleGraph(std::vector<double> gamma_axis, std::vector<double> kappa_axis,
                std::vector<double> delta01, TotalSpin j, int power,
                GraphOptions options);

  std::size_t n_gamma() const noexcept { return gamma_axis_.size(); }
  std::size_t n_kappa() const noexcept { return kappa_axis_.size(); }
  const std::vector<double>& gamma_axis() const noexcept { return gamma_axis_; }
  const std::vector<double>& kappa_axis() const noexcept { return kappa_axis_; }
  TotalSpin j() const noexcept { return j_; }
  int power() const noexcept { return power_; }
  const GraphOptions& options() const noexcept { return options_; }

  double gap(GridIndex cell) const {
    return delta01_[cell.kappa * gamma_axis_.size() + cell.gamma];
  }
  GridIndex start() const { return {gamma_axis_.size() - 1, kappa_axis_.size() - 1}; }
  GridIndex goal() const { return {0, kappa_axis_.size() - 1}; }

  /// Weight of the edge between 4-neighbours a -> b.
  double edge_weight(GridIndex a, GridIndex b) const;

  /// Cells whose gap sits below the sentinel threshold.
  std::vector<GridIndex> flagged_cells() const;

  /// Replace the weight (both directions) of the horizontal edge between
  /// columns (left, left+1) on the given row with a refined crossing cost.
  void set_horizontal_toll(std::size_t row, std::size_t left_column, double weight);
  /// Same for the vertical edge between rows (lower, lower+1) on a column.
  void set_vertical_toll(std::size_t column, std::size_t lower_row, double weight);
  std::size_t n_tolls() const noexcept { return tolls_.size() + vertical_tolls_.size(); }

 private:
  std::vector<double> gamma_axis_, kappa_axis_, delta01_;
  TotalSpin j_;
  int power_ = 3;
  GraphOptions options_;
  std::map<std::pair<std::size_t, std::size_t>, double> tolls_;
  std::map<std::pair<std::size_t, std::size_t>, double> vertical_tolls_;
};

ScheduleGraph build_graph(const GapLandscape& landscape, GraphOptions options = {});

struct PathResult {
  std::vector<GridIndex> cells;    // start .. goal, consecutive 4-neighbours
  std::vector<double> cumulative;  // running cost after entering each cell
  double total_time = 0.0;
};

/// Exact minimum-cost path by Dijkstra label setting with a priority queue;
/// ties are broken by lexicographic (gamma index, kappa index).
PathResult shortest_schedule(const ScheduleGraph& graph);

/// Cost of the schedule pinned to the kappa = 1 row (no catalysis).
double beeline_time(const ScheduleGraph& graph);

struct RidgeRefineOptions {
  double window_widths = 5.0;  // integrate edges within this many dip widths
  double simpson_rel_tol = 1e-3;
};

/// Re-prices the horizontal edges crossing the transition ridge: per row the
/// dip of Delta01(Gamma) is located by golden refinement and the edge cost
/// recomputed as (1/j)(2-kappa) * int dGamma / Delta01^2 by adaptive Simpson.
/// This removes the aliasing error of sampling a near-delta-function ridge
/// on a finite raster.
void refine_ridge_crossings(ScheduleGraph& graph, const RidgeRefineOptions& options = {},
                            const ParallelMap& par = {});

struct TstarSample {
  double j = 0.0;
  double tstar = 0.0;
  double beeline = 0.0;  // kappa = 1 restricted cost
};

struct TstarScalingOptions {
  std::size_t raster = 201;
  bool refine_ridge = true;
  bool resolution_check = false;  // rerun the largest j at doubled density
};

struct TstarScalingResult {
  ScalingFit fit;  // log t* vs log j
  std::vector<TstarSample> samples;
  bool resolution_warning = false;
  double resolution_shift = 0.0;  // relative t* change under doubling
};

TstarScalingResult tstar_scaling(std::span<const double> j_list,
                                 const TstarScalingOptions& options = {},
                                 const ParallelMap& par = {});

}  // namespace spingap
