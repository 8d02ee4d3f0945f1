#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spingap/banded.hpp"
#include "spingap/parallel.hpp"
#include "spingap/spinspace.hpp"

namespace spingap {

struct SpectralSummary {
  std::vector<double> eigenvalues;  // ascending, k lowest
  std::optional<std::vector<double>> ground_state;
  std::optional<std::vector<int>> parity_labels;  // +1 even, -1 odd under m -> -m

  double delta01() const;  // E1 - E0
  double delta02() const;  // E2 - E0
};

/// k lowest eigenvalues (and optionally the ground state) of a banded
/// symmetric matrix. The ground state carries a fixed global sign: its
/// largest-magnitude amplitude is positive.
SpectralSummary lowest_eigenpairs(const BandedSymmetricMatrix& matrix, std::size_t k,
                                  bool with_ground_state = false);

/// Eigenvalues labelled by parity under the reflection R|m> = |-m>.
/// Requires [H, R] = 0 (entrywise check, tolerance 1e-12 relative);
/// near-degenerate clusters are rotated into parity eigenstates before
/// labelling. delta01 is then the cross-parity gap and delta02 the
/// lowest same-parity gap.
SpectralSummary parity_resolved_gaps(const BandedSymmetricMatrix& matrix,
                                     std::size_t k = 4);

struct GapLandscape {
  std::vector<double> gamma_axis;  // ascending
  std::vector<double> kappa_axis;  // ascending
  std::vector<SpectralSummary> cells;  // cells[ki * gamma_axis.size() + gi]
  TotalSpin j;
  int power = 3;

  const SpectralSummary& at(std::size_t gamma_index, std::size_t kappa_index) const;
  std::size_t n_gamma() const noexcept { return gamma_axis.size(); }
  std::size_t n_kappa() const noexcept { return kappa_axis.size(); }
};

/// One spectral summary per (Gamma, kappa) grid point of the driven p-spin
/// model. Cells are independent; evaluation order does not affect output.
/// Per-cell failures are rethrown with the grid coordinates attached.
GapLandscape scan_landscape(TotalSpin j, int power, std::span<const double> gamma_grid,
                            std::span<const double> kappa_grid,
                            const ParallelMap& par = {}, std::size_t k = 3);

struct GammaMinimum {
  double gamma_field = 0.0;
  double gap = 0.0;
  bool at_lower_edge = false;
  bool at_upper_edge = false;
};

/// Bracketed minimization of Delta01 over Gamma at fixed kappa: coarse scan
/// followed by golden-section refinement to `tol` in Gamma.
GammaMinimum min_gap_over_gamma(TotalSpin j, int power, double kappa,
                                double gamma_lo = 1e-3, double gamma_hi = 1.0 - 1e-9,
                                double tol = 1e-6, std::size_t coarse_points = 129);

struct SaddleResult {
  ControlPoint control;
  double gap = 0.0;
  bool kappa_clamped = false;  // optimum sits on the kappa = 1 boundary
};

struct SaddleOptions {
  double control_tol = 1e-4;     // refinement tolerance in both controls
  double kappa_min = 0.02;       // lower edge of the kappa search interval
  std::size_t coarse_kappa = 33; // coarse scan resolution in kappa
  std::size_t coarse_gamma = 129;
};

/// argmax over kappa of (min over Gamma of Delta01): the saddle of the
/// transition ridge. The inner minimum is refined by golden-section in Gamma
/// and the outer maximum by golden-section in kappa. If the best interior
/// kappa cannot beat the kappa = 1 boundary the result is clamped there.
/// Throws NumericalError if the inner minimum lands on the Gamma edge.
SaddleResult saddle_search(TotalSpin j, int power, const SaddleOptions& options = {});

/// Same search, seeded by the coarse structure of an existing landscape.
SaddleResult saddle_search(const GapLandscape& landscape,
                           const SaddleOptions& options = {});

}  // namespace spingap
