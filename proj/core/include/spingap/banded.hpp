#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spingap {

/// Real symmetric matrix stored by its main diagonal and `bandwidth`
/// superdiagonals. The layout is LAPACK lower-band column-major:
/// entry (i, i+k) lives at data[k + i*(bandwidth+1)].
///
/// Symmetry is structural: only one triangle is stored, so M == Mᵀ cannot be
/// violated by construction.
class BandedSymmetricMatrix {
 public:
  BandedSymmetricMatrix(std::size_t dim, std::size_t bandwidth);

  static BandedSymmetricMatrix diagonal(std::vector<double> entries);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t bandwidth() const noexcept { return bandwidth_; }

  /// Element (i, i+k) for 0 <= k <= bandwidth, i+k < dim.
  double& band_entry(std::size_t k, std::size_t i);
  double band_entry(std::size_t k, std::size_t i) const;

  /// General accessor; returns 0 outside the band.
  double at(std::size_t i, std::size_t j) const;

  /// this += c * other. `other` must have the same dim and a bandwidth
  /// that fits inside this matrix's band.
  void add_scaled(const BandedSymmetricMatrix& other, double c);

  /// y = A x
  std::vector<double> apply(std::span<const double> x) const;

  double inf_norm() const;
  bool all_finite() const;

  /// Dense reconstruction, row-major dim*dim. Intended for small matrices
  /// (oracle checks, debugging).
  std::vector<double> dense() const;

  /// Raw band storage (LAPACK 'L' layout with ldab = bandwidth+1).
  std::span<const double> storage() const noexcept { return data_; }

 private:
  std::size_t dim_;
  std::size_t bandwidth_;
  std::vector<double> data_;
};

/// Exact band-limited product A*A of a banded symmetric matrix with itself;
/// the result has bandwidth 2*bandwidth(A).
BandedSymmetricMatrix banded_square(const BandedSymmetricMatrix& a);

}  // namespace spingap
