#include "spingap/banded.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "spingap/errors.hpp"

namespace spingap {

BandedSymmetricMatrix::BandedSymmetricMatrix(std::size_t dim, std::size_t bandwidth)
    : dim_(dim), bandwidth_(bandwidth), data_(dim * (bandwidth + 1), 0.0) {
  if (dim == 0) throw ConfigError("BandedSymmetricMatrix: dim must be positive");
  if (bandwidth >= dim && dim > 1)
    throw ConfigError("BandedSymmetricMatrix: bandwidth must be < dim");
}

BandedSymmetricMatrix BandedSymmetricMatrix::diagonal(std::vector<double> entries) {
  BandedSymmetricMatrix m(entries.size(), 0);
  m.data_ = std::move(entries);
  return m;
}

double& BandedSymmetricMatrix::band_entry(std::size_t k, std::size_t i) {
  return data_[k + i * (bandwidth_ + 1)];
}

double BandedSymmetricMatrix::band_entry(std::size_t k, std::size_t i) const {
  return data_[k + i * (bandwidth_ + 1)];
}

double BandedSymmetricMatrix::at(std::size_t i, std::size_t j) const {
  const std::size_t lo = std::min(i, j);
  const std::size_t k = std::max(i, j) - lo;
  if (k > bandwidth_) return 0.0;
  return band_entry(k, lo);
}

void BandedSymmetricMatrix::add_scaled(const BandedSymmetricMatrix& other, double c) {
  if (other.dim_ != dim_) throw ConfigError("add_scaled: dimension mismatch");
  if (other.bandwidth_ > bandwidth_)
    throw ConfigError("add_scaled: other bandwidth exceeds target band");
  for (std::size_t k = 0; k <= other.bandwidth_; ++k)
    for (std::size_t i = 0; i + k < dim_; ++i)
      band_entry(k, i) += c * other.band_entry(k, i);
}

std::vector<double> BandedSymmetricMatrix::apply(std::span<const double> x) const {
  if (x.size() != dim_) throw ConfigError("apply: vector length mismatch");
  std::vector<double> y(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = band_entry(0, i) * x[i];
    for (std::size_t k = 1; k <= bandwidth_; ++k) {
      if (i + k < dim_) acc += band_entry(k, i) * x[i + k];
      if (i >= k) acc += band_entry(k, i - k) * x[i - k];
    }
    y[i] = acc;
  }
  return y;
}

double BandedSymmetricMatrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    double row = std::abs(band_entry(0, i));
    for (std::size_t k = 1; k <= bandwidth_; ++k) {
      if (i + k < dim_) row += std::abs(band_entry(k, i));
      if (i >= k) row += std::abs(band_entry(k, i - k));
    }
    best = std::max(best, row);
  }
  return best;
}

bool BandedSymmetricMatrix::all_finite() const {
  for (std::size_t k = 0; k <= bandwidth_; ++k)
    for (std::size_t i = 0; i + k < dim_; ++i)
      if (!std::isfinite(band_entry(k, i))) return false;
  return true;
}

std::vector<double> BandedSymmetricMatrix::dense() const {
  std::vector<double> m(dim_ * dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k <= bandwidth_ && i + k < dim_; ++k) {
      m[i * dim_ + (i + k)] = band_entry(k, i);
      m[(i + k) * dim_ + i] = band_entry(k, i);
    }
  return m;
}

BandedSymmetricMatrix banded_square(const BandedSymmetricMatrix& a) {
  const std::size_t n = a.dim();
  const std::size_t bw = std::min(2 * a.bandwidth(), n > 0 ? n - 1 : 0);
  BandedSymmetricMatrix c(n, bw);
  // (A^2)(i, j) = sum_l A(i, l) A(l, j); l runs over the overlap of bands.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k <= bw && i + k < n; ++k) {
      const std::size_t j = i + k;
      const std::size_t lo = (i > a.bandwidth()) ? i - a.bandwidth() : 0;
      const std::size_t hi = std::min(n - 1, j + a.bandwidth());
      double acc = 0.0;
      for (std::size_t l = lo; l <= hi; ++l) acc += a.at(i, l) * a.at(l, j);
      c.band_entry(k, i) = acc;
    }
  }
  return c;
}

}  // namespace spingap
