#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "spingap/banded.hpp"
#include "spingap/eigensolve.hpp"
#include "spingap/errors.hpp"

using namespace spingap;

namespace {

BandedSymmetricMatrix random_banded(std::size_t dim, std::size_t bw, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BandedSymmetricMatrix m(dim, bw);
  for (std::size_t k = 0; k <= bw; ++k)
    for (std::size_t i = 0; i + k < dim; ++i) m.band_entry(k, i) = u(rng);
  return m;
}

Eigen::MatrixXd to_eigen(const BandedSymmetricMatrix& m) {
  const auto dense = m.dense();
  Eigen::MatrixXd out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = dense[i * m.dim() + j];
  return out;
}

}  // namespace

TEST_SUITE("banded") {

TEST_CASE("dense reconstruction is exactly symmetric") {
  std::mt19937 rng(7);
  for (std::size_t bw : {0u, 1u, 2u, 3u}) {
    auto m = random_banded(9, bw, rng);
    const auto d = m.dense();
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j) CHECK(d[i * 9 + j] == d[j * 9 + i]);
  }
}

TEST_CASE("apply matches dense multiplication") {
  std::mt19937 rng(11);
  auto m = random_banded(17, 2, rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(17);
  for (double& v : x) v = u(rng);
  const auto y = m.apply(x);
  Eigen::VectorXd xe(17);
  for (int i = 0; i < 17; ++i) xe(i) = x[i];
  const Eigen::VectorXd ye = to_eigen(m) * xe;
  for (int i = 0; i < 17; ++i) CHECK(y[i] == doctest::Approx(ye(i)).epsilon(1e-14));
}

TEST_CASE("banded_square equals the dense square") {
  std::mt19937 rng(3);
  auto m = random_banded(12, 1, rng);
  const auto sq = banded_square(m);
  CHECK(sq.bandwidth() == 2);
  const Eigen::MatrixXd ref = to_eigen(m) * to_eigen(m);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j)
      CHECK(sq.at(i, j) == doctest::Approx(ref(i, j)).epsilon(1e-14));
}

TEST_CASE("inf norm matches dense") {
  std::mt19937 rng(5);
  auto m = random_banded(10, 2, rng);
  CHECK(m.inf_norm() ==
        doctest::Approx(to_eigen(m).cwiseAbs().rowwise().sum().maxCoeff()));
}

TEST_CASE("add_scaled validates shape") {
  BandedSymmetricMatrix a(5, 1), b(5, 2), c(6, 1);
  CHECK_THROWS_AS(a.add_scaled(b, 1.0), ConfigError);
  CHECK_THROWS_AS(a.add_scaled(c, 1.0), ConfigError);
}

TEST_CASE("eigensolver rejects NaN and bad k") {
  BandedSymmetricMatrix m(4, 1);
  m.band_entry(0, 2) = std::nan("");
  CHECK_THROWS_AS(lowest_eigenpairs_banded(m, 2, false), ConfigError);
  BandedSymmetricMatrix ok(4, 1);
  CHECK_THROWS_AS(lowest_eigenpairs_banded(ok, 5, false), ConfigError);
  CHECK_THROWS_AS(lowest_eigenpairs_banded(ok, 0, false), ConfigError);
}

TEST_CASE("banded eigensolver matches dense oracle") {
  std::mt19937 rng(23);
  for (std::size_t dim : {8u, 40u, 160u}) {
    for (std::size_t bw : {1u, 2u}) {
      auto m = random_banded(dim, bw, rng);
      const std::size_t k = std::min<std::size_t>(5, dim);
      const auto mine = lowest_eigenpairs_banded(m, k, true);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(to_eigen(m));
      const double scale = std::max(1.0, std::abs(dense.eigenvalues()(0)));
      for (std::size_t p = 0; p < k; ++p)
        CHECK(std::abs(mine.values[p] - dense.eigenvalues()(p)) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("residual contract holds for returned eigenpairs") {
  std::mt19937 rng(29);
  auto m = random_banded(60, 2, rng);
  const auto result = lowest_eigenpairs_banded(m, 3, true);
  const double tol = 1e-10 * m.inf_norm();
  for (std::size_t p = 0; p < 3; ++p) {
    const auto av = m.apply(result.vectors[p]);
    for (std::size_t i = 0; i < 60; ++i)
      CHECK(std::abs(av[i] - result.values[p] * result.vectors[p][i]) <= tol);
  }
}

}  // TEST_SUITE
