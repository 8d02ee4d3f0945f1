#pragma once

#include <cstddef>
#include <vector>

#include "spingap/banded.hpp"

namespace spingap {

struct EigenPairs {
  std::vector<double> values;                // ascending, k lowest
  std::vector<std::vector<double>> vectors;  // empty unless requested
};

/// k lowest eigenpairs of a banded symmetric matrix.
///
/// Backend: band reduction to tridiagonal form + bisection/inverse iteration
/// (LAPACK dsbevx), with a direct tridiagonal path (dstevr) when the
/// bandwidth is <= 1. When vectors are requested each pair is verified to
/// satisfy ||Av - lambda v||_inf <= 1e-10 * ||A||_inf.
///
/// Throws ConfigError on bad arguments or NaN entries, SolverError on
/// backend failure or residual violation.
EigenPairs lowest_eigenpairs_banded(const BandedSymmetricMatrix& a, std::size_t k,
                                    bool want_vectors);

}  // namespace spingap
