#pragma once

namespace spingap {

/// Weber parabolic cylinder function D_nu(x) for real order and argument.
///
/// Supported envelope: |nu| <= 50, |x| <= 50 (rejected outside). Relative
/// accuracy ~1e-8 across the envelope. Inside |x| <= 6 the value comes from
/// the even/odd Kummer-pair series; outside, from the large-argument
/// expansion, switching at the fixed matching radius |x| = 6, with an
/// integral-representation / ODE-integration fallback where the expansion
/// has not yet set in.
double parabolic_cylinder_d(double nu, double x);

/// Even summit eigenstate of the inverted scale-free parabola:
/// Re[ e^{-i xi^2/2} 1F1( (1 - 2 i delta)/4 ; 1/2 ; i xi^2 ) ],
/// pinned to 1 at xi = 0. delta is the energy deficit below the summit.
/// Envelope |xi| <= 5 (the summit region), |delta| <= 50.
double summit_ground_kummer(double delta_plus, double xi);

}  // namespace spingap
