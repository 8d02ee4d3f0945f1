#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spingap/banded.hpp"

namespace spingap {

/// Total spin quantum number j, stored as the integer 2j so that
/// half-integer values are exact.
struct TotalSpin {
  int two_j = 0;

  static TotalSpin from_value(double j);   // rejects non-half-integer j
  static TotalSpin from_two_j(int two_j);  // rejects negative 2j

  double value() const noexcept { return 0.5 * two_j; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(two_j) + 1; }
  /// m value of basis state i, ordered ascending: m = -j .. +j.
  double magnetic_number(std::size_t i) const noexcept {
    return -0.5 * two_j + static_cast<double>(i);
  }
};

/// Location in the two-parameter control space of the driven model:
/// transverse-field strength Gamma and problem/driver mixing kappa,
/// both in [0, 1].
struct ControlPoint {
  double gamma_field = 1.0;
  double kappa = 1.0;
};

struct SpinParams {
  TotalSpin j;
  int power = 3;  // interaction power p >= 2
  ControlPoint control;

  void validate() const;
  /// gamma = Gamma / (1 - Gamma); undefined (throws) at Gamma = 1.
  double annealing_ratio() const;
};

/// Jz in the m-ascending basis: diagonal with entries -j .. +j.
BandedSymmetricMatrix build_jz(TotalSpin j);

/// Jx in the m-ascending basis: symmetric tridiagonal with
/// <m+1|Jx|m> = sqrt(j^2 - m^2 + j - m) / 2.
BandedSymmetricMatrix build_jx(TotalSpin j);

/// H = -Gamma Jx/j - kappa (1-Gamma) (Jz/j)^p + (1-Gamma)(1-kappa) (Jx/j)^2.
/// Bandwidth 2; the driver square is formed by an exact band product.
BandedSymmetricMatrix build_pspin_hamiltonian(const SpinParams& params);

/// H = -Gamma_x Jx/j - (1-Gamma_x) [ (1-|Gamma_z|) (Jz/j)^2 + Gamma_z Jz/j ].
/// Requires Gamma_x in [0,1], |Gamma_z| <= 1. Bandwidth 1.
BandedSymmetricMatrix build_lmg_hamiltonian(TotalSpin j, double gamma_x, double gamma_z);

/// Energy of the product (spin-coherent) state at polar angle theta from the
/// x axis: -Gamma cos(theta) - kappa (1-Gamma) sin^p(theta)
///         + (1-Gamma)(1-kappa) cos^2(theta).
double mean_field_energy(double theta, const SpinParams& params);

/// Mean-spin summary of a normalized real state vector over m.
struct SpinVectorStats {
  double r;        // |<J>| / j
  double theta;    // atan2(<Jz>, <Jx>)
  double delta_r;  // sqrt(Var Jx + Var Jy + Var Jz) / j
};

/// Requires a normalized vector (tolerance 1e-10). Real amplitudes imply
/// <Jy> = 0; <Jy^2> is recovered from the Casimir identity
/// Jy^2 = j(j+1) - Jx^2 - Jz^2.
SpinVectorStats spin_vector_stats(std::span<const double> amplitudes, TotalSpin j);

/// Amplitudes over m of the n-qubit product state with every spin pointing
/// at polar angle theta from the x axis (in the x-z plane).
std::vector<double> coherent_state(TotalSpin j, double theta);

}  // namespace spingap
