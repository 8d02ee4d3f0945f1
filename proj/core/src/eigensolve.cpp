#include "spingap/eigensolve.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

#include "spingap/errors.hpp"

namespace spingap {

namespace {

void check_residuals(const BandedSymmetricMatrix& a, const EigenPairs& result) {
  const double tol = 1e-10 * std::max(a.inf_norm(), 1.0);
  for (std::size_t p = 0; p < result.vectors.size(); ++p) {
    const auto av = a.apply(result.vectors[p]);
    double resid = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i)
      resid = std::max(resid, std::abs(av[i] - result.values[p] * result.vectors[p][i]));
    if (!(resid <= tol))
      throw SolverError("eigenpair residual " + std::to_string(resid) +
                            " exceeds tolerance " + std::to_string(tol),
                        0, {static_cast<int>(p)});
  }
}

EigenPairs solve_tridiagonal(const BandedSymmetricMatrix& a, std::size_t k,
                             bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(a.dim());
  std::vector<double> d(n), e(n > 1 ? n - 1 : 1, 0.0);
  for (lapack_int i = 0; i < n; ++i) d[i] = a.band_entry(0, i);
  if (a.bandwidth() >= 1)
    for (lapack_int i = 0; i + 1 < n; ++i) e[i] = a.band_entry(1, i);

  lapack_int m = 0;
  std::vector<double> w(n), z(want_vectors ? static_cast<std::size_t>(n) * k : 1);
  std::vector<lapack_int> isuppz(2 * std::max<std::size_t>(k, 1));
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', n, d.data(), e.data(), 0.0, 0.0,
      1, static_cast<lapack_int>(k), abstol, &m, w.data(), z.data(), n, isuppz.data());
  if (info != 0) throw SolverError("dstevr failed, info=" + std::to_string(info), info);
  if (m < static_cast<lapack_int>(k))
    throw SolverError("dstevr returned fewer eigenvalues than requested", 0);

  EigenPairs out;
  out.values.assign(w.begin(), w.begin() + k);
  if (want_vectors) {
    out.vectors.resize(k);
    for (std::size_t p = 0; p < k; ++p)
      out.vectors[p].assign(z.begin() + p * n, z.begin() + (p + 1) * n);
  }
  return out;
}

EigenPairs solve_banded(const BandedSymmetricMatrix& a, std::size_t k,
                        bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(a.dim());
  const lapack_int kd = static_cast<lapack_int>(a.bandwidth());
  const lapack_int ldab = kd + 1;
  // storage() is already LAPACK 'L' band layout; dsbevx destroys it, so copy.
  std::vector<double> ab(a.storage().begin(), a.storage().end());
  std::vector<double> q(static_cast<std::size_t>(n) * n);
  std::vector<double> w(n), z(want_vectors ? static_cast<std::size_t>(n) * k : 1);
  std::vector<lapack_int> ifail(n, 0);
  lapack_int m = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dsbevx(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', 'L', n, kd, ab.data(), ldab,
      q.data(), n, 0.0, 0.0, 1, static_cast<lapack_int>(k), abstol, &m, w.data(),
      z.data(), n, ifail.data());
  if (info != 0) {
    std::vector<int> failed;
    for (lapack_int i = 0; i < n; ++i)
      if (ifail[i] != 0) failed.push_back(static_cast<int>(ifail[i]));
    throw SolverError("dsbevx failed, info=" + std::to_string(info) + ", " +
                          std::to_string(failed.size()) + " eigenvectors unconverged",
                      info, failed);
  }
  if (m < static_cast<lapack_int>(k))
    throw SolverError("dsbevx returned fewer eigenvalues than requested", 0);

  EigenPairs out;
  out.values.assign(w.begin(), w.begin() + k);
  if (want_vectors) {
    out.vectors.resize(k);
    for (std::size_t p = 0; p < k; ++p)
      out.vectors[p].assign(z.begin() + p * n, z.begin() + (p + 1) * n);
  }
  return out;
}

}  // namespace

EigenPairs lowest_eigenpairs_banded(const BandedSymmetricMatrix& a, std::size_t k,
                                    bool want_vectors) {
  if (k == 0 || k > a.dim())
    throw ConfigError("lowest_eigenpairs: need 1 <= k <= dim");
  if (!a.all_finite())
    throw ConfigError("lowest_eigenpairs: matrix has NaN or Inf entries");

  EigenPairs result = (a.bandwidth() <= 1) ? solve_tridiagonal(a, k, want_vectors)
                                           : solve_banded(a, k, want_vectors);
  if (want_vectors) check_residuals(a, result);
  return result;
}

}  // namespace spingap
