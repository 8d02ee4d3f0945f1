#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "spingap/errors.hpp"
#include "spingap/spectrum.hpp"
#include "spingap/spinspace.hpp"

using namespace spingap;

namespace {

Eigen::MatrixXd to_eigen(const BandedSymmetricMatrix& m) {
  const auto dense = m.dense();
  Eigen::MatrixXd out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = dense[i * m.dim() + j];
  return out;
}

double expectation(const BandedSymmetricMatrix& h, const std::vector<double>& psi) {
  const auto hpsi = h.apply(psi);
  double e = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) e += psi[i] * hpsi[i];
  return e;
}

}  // namespace

TEST_SUITE("spinspace") {

TEST_CASE("jz is the ascending magnetic-number diagonal") {
  auto check = [](double j, const std::vector<double>& want) {
    const auto m = build_jz(TotalSpin::from_value(j));
    REQUIRE(m.dim() == want.size());
    CHECK(m.bandwidth() == 0);
    for (std::size_t i = 0; i < want.size(); ++i)
      CHECK(m.band_entry(0, i) == doctest::Approx(want[i]));
  };
  check(0.5, {-0.5, 0.5});
  check(1.0, {-1.0, 0.0, 1.0});
  check(1.5, {-1.5, -0.5, 0.5, 1.5});
}

TEST_CASE("non-half-integer spin is rejected") {
  CHECK_THROWS_AS(TotalSpin::from_value(0.3), ConfigError);
  CHECK_THROWS_AS(TotalSpin::from_value(-1.0), ConfigError);
  CHECK(TotalSpin::from_value(2.5).two_j == 5);
}

TEST_CASE("jx ladder matrix elements") {
  const auto half = build_jx(TotalSpin::from_value(0.5));
  CHECK(half.band_entry(1, 0) == doctest::Approx(0.5));  // Pauli sigma_x / 2

  const auto one = build_jx(TotalSpin::from_value(1.0));
  CHECK(one.band_entry(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(one.band_entry(1, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("jx extreme eigenvalues are +-j (dense oracle)") {
  for (double j : {1.5, 5.0, 10.0}) {
    const auto jx = build_jx(TotalSpin::from_value(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(jx));
    CHECK(es.eigenvalues()(0) == doctest::Approx(-j).epsilon(1e-12));
    CHECK(es.eigenvalues()(jx.dim() - 1) == doctest::Approx(j).epsilon(1e-12));
  }
}

TEST_CASE("p-spin Hamiltonian: pure transverse field") {
  SpinParams p{TotalSpin::from_value(1.0), 3, {1.0, 0.7}};
  const auto summary = lowest_eigenpairs(build_pspin_hamiltonian(p), 3);
  CHECK(summary.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(summary.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(summary.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(summary.delta01() == doctest::Approx(1.0));
}

TEST_CASE("p-spin Hamiltonian: pure problem term") {
  SpinParams p{TotalSpin::from_value(2.0), 3, {0.0, 1.0}};
  const auto summary = lowest_eigenpairs(build_pspin_hamiltonian(p), 2, true);
  CHECK(summary.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(summary.delta01() == doctest::Approx(7.0 / 8.0).epsilon(1e-13));
  // ground state pinned at m = +j
  CHECK((*summary.ground_state)[4] == doctest::Approx(1.0));
}

TEST_CASE("p-spin Hamiltonian entries by hand at j=1") {
  SpinParams p{TotalSpin::from_value(1.0), 3, {0.5, 0.5}};
  const auto h = build_pspin_hamiltonian(p);
  REQUIRE(h.dim() == 3);
  REQUIRE(h.bandwidth() == 2);
  const double off = -0.5 / std::sqrt(2.0);
  CHECK(h.at(0, 0) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(h.at(1, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(h.at(2, 2) == doctest::Approx(-0.125).epsilon(1e-14));
  CHECK(h.at(0, 1) == doctest::Approx(off).epsilon(1e-14));
  CHECK(h.at(1, 2) == doctest::Approx(off).epsilon(1e-14));
  CHECK(h.at(0, 2) == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("p-spin rejects p < 2 and out-of-range controls") {
  CHECK_THROWS_AS(build_pspin_hamiltonian({TotalSpin::from_value(2), 1, {0.5, 0.5}}),
                  ConfigError);
  CHECK_THROWS_AS(build_pspin_hamiltonian({TotalSpin::from_value(2), 3, {1.5, 0.5}}),
                  ConfigError);
  CHECK_THROWS_AS(build_pspin_hamiltonian({TotalSpin::from_value(2), 3, {0.5, -0.1}}),
                  ConfigError);
}

TEST_CASE("no band leakage beyond the second superdiagonal") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    SpinParams p{TotalSpin::from_value(6.0), 3, {u(rng), u(rng)}};
    const auto h = build_pspin_hamiltonian(p);
    const auto dense = h.dense();
    for (std::size_t i = 0; i < h.dim(); ++i)
      for (std::size_t j = i + 3; j < h.dim(); ++j)
        CHECK(dense[i * h.dim() + j] == 0.0);
  }
}

TEST_CASE("LMG: pure transverse field has spacing 1/j") {
  const auto summary =
      lowest_eigenpairs(build_lmg_hamiltonian(TotalSpin::from_value(2.0), 1.0, 0.0), 5);
  for (int k = 0; k < 4; ++k)
    CHECK(summary.eigenvalues[k + 1] - summary.eigenvalues[k] ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("LMG: Gamma_x = 0 cases") {
  const auto degenerate =
      lowest_eigenpairs(build_lmg_hamiltonian(TotalSpin::from_value(2.0), 0.0, 0.0), 2);
  CHECK(degenerate.delta01() == doctest::Approx(0.0).epsilon(1e-14));

  const auto biased =
      lowest_eigenpairs(build_lmg_hamiltonian(TotalSpin::from_value(2.0), 0.0, 0.25), 5,
                        true);
  CHECK(biased.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(biased.delta01() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK((*biased.ground_state)[4] == doctest::Approx(1.0));  // |m = +j>
}

TEST_CASE("LMG rejects out-of-range fields") {
  CHECK_THROWS_AS(build_lmg_hamiltonian(TotalSpin::from_value(2), 1.2, 0.0), ConfigError);
  CHECK_THROWS_AS(build_lmg_hamiltonian(TotalSpin::from_value(2), 0.5, 1.3), ConfigError);
}

TEST_CASE("LMG reflection symmetry at zero longitudinal field") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    const auto h = build_lmg_hamiltonian(TotalSpin::from_value(7.0), u(rng), 0.0);
    const auto dense = h.dense();
    const std::size_t n = h.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(dense[i * n + j] - dense[(n - 1 - i) * n + (n - 1 - j)]) <=
              1e-14);
  }
}

TEST_CASE("mean-field energy closed forms") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    const double gamma = u(rng), kappa = u(rng);
    SpinParams p{TotalSpin::from_value(4.0), 3, {gamma, kappa}};
    CHECK(mean_field_energy(0.0, p) ==
          doctest::Approx(-gamma + (1 - gamma) * (1 - kappa)).epsilon(1e-14));
  }
  SpinParams half{TotalSpin::from_value(4.0), 3, {0.5, 1.0}};
  CHECK(mean_field_energy(M_PI / 2, half) == doctest::Approx(-0.5).epsilon(1e-12));
  SpinParams nodrive{TotalSpin::from_value(4.0), 3, {0.35, 0.0}};
  CHECK(mean_field_energy(M_PI / 2, nodrive) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("spin vector stats on reference states") {
  const TotalSpin j4 = TotalSpin::from_value(4.0);
  std::vector<double> top(j4.dimension(), 0.0);
  top.back() = 1.0;  // |m = +j>
  const auto stats = spin_vector_stats(top, j4);
  CHECK(stats.r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(stats.theta == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(stats.delta_r == doctest::Approx(1.0 / std::sqrt(4.0)).epsilon(1e-12));

  // transverse-field ground state: classical pointer along x
  const TotalSpin j8 = TotalSpin::from_value(8.0);
  SpinParams p{j8, 3, {1.0, 1.0}};
  const auto ground = lowest_eigenpairs(build_pspin_hamiltonian(p), 1, true);
  const auto gstats = spin_vector_stats(*ground.ground_state, j8);
  CHECK(gstats.r == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(gstats.theta) <= 1e-8);
  CHECK(gstats.delta_r == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-10));

  // GHZ-type superposition has vanishing mean spin
  const TotalSpin j2 = TotalSpin::from_value(2.0);
  std::vector<double> ghz(j2.dimension(), 0.0);
  ghz.front() = ghz.back() = 1.0 / std::sqrt(2.0);
  CHECK(spin_vector_stats(ghz, j2).r == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("unnormalized states are rejected") {
  std::vector<double> bad(5, 0.5);
  CHECK_THROWS_AS(spin_vector_stats(bad, TotalSpin::from_value(2.0)), ConfigError);
}

TEST_CASE("coherent state points where asked") {
  const TotalSpin j = TotalSpin::from_value(12.0);
  for (double theta : {0.0, 0.4, 1.1, M_PI / 2}) {
    const auto psi = coherent_state(j, theta);
    const auto stats = spin_vector_stats(psi, j);
    CHECK(stats.r == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(stats.theta == doctest::Approx(theta).epsilon(1e-8));
    CHECK(stats.delta_r == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-9));
  }
}

TEST_CASE("mean field matches the coherent-state expectation to O(1/j)") {
  const double theta = 0.8;
  SpinParams base{TotalSpin::from_value(10.0), 3, {0.45, 0.6}};
  double previous = 0.0;
  for (double jv : {10.0, 20.0, 40.0}) {
    SpinParams p = base;
    p.j = TotalSpin::from_value(jv);
    const auto h = build_pspin_hamiltonian(p);
    const auto psi = coherent_state(p.j, theta);
    const double diff = std::abs(expectation(h, psi) - mean_field_energy(theta, p));
    CHECK(diff * jv <= 3.0);  // |difference| <= c / j
    if (previous > 0.0) CHECK(diff <= 0.75 * previous);
    previous = diff;
  }
}

}  // TEST_SUITE
