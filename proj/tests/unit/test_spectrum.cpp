#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "spingap/errors.hpp"
#include "spingap/parallel.hpp"
#include "spingap/spectrum.hpp"

using namespace spingap;

namespace {

Eigen::MatrixXd to_eigen(const BandedSymmetricMatrix& m) {
  const auto dense = m.dense();
  Eigen::MatrixXd out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = dense[i * m.dim() + j];
  return out;
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("diagonal matrix spectrum") {
  const auto m = BandedSymmetricMatrix::diagonal({-1.0, 0.0, 1.0});
  const auto s = lowest_eigenpairs(m, 2);
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(0.0));
  CHECK(s.delta01() == doctest::Approx(1.0));
}

TEST_CASE("jx spectrum at j=1") {
  const auto s = lowest_eigenpairs(build_jx(TotalSpin::from_value(1.0)), 3);
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gap matches a dense oracle at j=5") {
  SpinParams p{TotalSpin::from_value(5.0), 3, {0.5, 1.0}};
  const auto h = build_pspin_hamiltonian(p);
  const auto s = lowest_eigenpairs(h, 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(to_eigen(h));
  const double oracle = dense.eigenvalues()(1) - dense.eigenvalues()(0);
  CHECK(std::abs(s.delta01() - oracle) <= 1e-10 * std::abs(oracle));
}

TEST_CASE("ground state global sign convention") {
  SpinParams p{TotalSpin::from_value(6.0), 3, {0.3, 0.8}};
  const auto s = lowest_eigenpairs(build_pspin_hamiltonian(p), 1, true);
  const auto& g = *s.ground_state;
  double peak = 0.0;
  for (double v : g)
    if (std::abs(v) > std::abs(peak)) peak = v;
  CHECK(peak > 0.0);
}

TEST_CASE("variational monotonicity under nonnegative diagonal perturbation") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  SpinParams p{TotalSpin::from_value(8.0), 3, {0.55, 0.6}};
  auto h = build_pspin_hamiltonian(p);
  const double e0 = lowest_eigenpairs(h, 1).eigenvalues[0];
  for (int trial = 0; trial < 5; ++trial) {
    auto perturbed = h;
    for (std::size_t i = 0; i < h.dim(); ++i) perturbed.band_entry(0, i) += u(rng);
    CHECK(lowest_eigenpairs(perturbed, 1).eigenvalues[0] >= e0 - 1e-12);
  }
}

TEST_CASE("parity labels for the transverse-field LMG chain") {
  const auto s =
      parity_resolved_gaps(build_lmg_hamiltonian(TotalSpin::from_value(1.0), 1.0, 0.0), 3);
  REQUIRE(s.parity_labels.has_value());
  CHECK((*s.parity_labels)[0] == 1);
  CHECK((*s.parity_labels)[1] == -1);
  CHECK(s.delta01() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate ground doublet is labelled as a +- pair") {
  const auto s =
      parity_resolved_gaps(build_lmg_hamiltonian(TotalSpin::from_value(2.0), 0.0, 0.0), 2);
  CHECK(s.delta01() == doctest::Approx(0.0).epsilon(1e-13));
  CHECK((*s.parity_labels)[0] == 1);
  CHECK((*s.parity_labels)[1] == -1);
}

TEST_CASE("ferromagnetic phase: cross-parity gap collapses, same-parity gap stays") {
  // j = 20 inside the broken phase
  const auto h = build_lmg_hamiltonian(TotalSpin::from_value(20.0), 0.5, 0.0);
  const auto s = parity_resolved_gaps(h, 3);
  CHECK(s.delta02() > s.delta01());
  CHECK(s.delta01() <= 1e-2 * s.delta02());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(to_eigen(h));
  CHECK(std::abs(s.delta02() - (dense.eigenvalues()(2) - dense.eigenvalues()(0))) <=
        1e-10);
}

TEST_CASE("parity check rejects asymmetric matrices") {
  const auto h = build_lmg_hamiltonian(TotalSpin::from_value(4.0), 0.5, 0.2);
  CHECK_THROWS_AS(parity_resolved_gaps(h, 3), ConfigError);
}

TEST_CASE("trivial one-cell landscape") {
  const double one[] = {1.0};
  const auto landscape =
      scan_landscape(TotalSpin::from_value(1.0), 3, std::span(one, 1), std::span(one, 1),
                     {}, 2);
  CHECK(landscape.at(0, 0).delta01() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("landscape scan is deterministic and a pure map") {
  const TotalSpin j = TotalSpin::from_value(4.0);
  std::vector<double> gammas{0.1, 0.35, 0.6, 0.85, 1.0};
  std::vector<double> kappas{0.2, 0.5, 0.8, 1.0};
  const auto serial = scan_landscape(j, 3, gammas, kappas, ParallelMap(), 3);
  const auto parallel = scan_landscape(j, 3, gammas, kappas, ParallelMap(4), 3);
  REQUIRE(serial.cells.size() == parallel.cells.size());
  for (std::size_t i = 0; i < serial.cells.size(); ++i)
    for (std::size_t e = 0; e < 3; ++e)
      CHECK(serial.cells[i].eigenvalues[e] == parallel.cells[i].eigenvalues[e]);

  // recompute one cell in isolation: bit-identical
  SpinParams p{j, 3, {gammas[2], kappas[1]}};
  const auto cell = lowest_eigenpairs(build_pspin_hamiltonian(p), 3);
  for (std::size_t e = 0; e < 3; ++e)
    CHECK(cell.eigenvalues[e] == serial.at(2, 1).eigenvalues[e]);
}

TEST_CASE("landscape scan validates grids") {
  const TotalSpin j = TotalSpin::from_value(2.0);
  std::vector<double> bad{0.5, 0.4};
  std::vector<double> ok{0.5};
  CHECK_THROWS_AS(scan_landscape(j, 3, bad, ok), ConfigError);
  std::vector<double> out_of_range{0.5, 1.4};
  CHECK_THROWS_AS(scan_landscape(j, 3, out_of_range, ok), ConfigError);
  CHECK_THROWS_AS(scan_landscape(j, 3, {}, ok), ConfigError);
}

TEST_CASE("small systems clamp at kappa = 1") {
  const auto s = saddle_search(TotalSpin::from_value(12.0), 3);
  CHECK(s.kappa_clamped);
  CHECK(s.control.kappa == doctest::Approx(1.0));
}

TEST_CASE("landscape-seeded saddle search agrees with the direct search") {
  const TotalSpin j = TotalSpin::from_value(20.0);
  std::vector<double> gammas, kappas;
  for (int i = 0; i <= 24; ++i) gammas.push_back(0.3 + 0.5 * i / 24.0);
  for (int i = 0; i <= 16; ++i) kappas.push_back(0.2 + 0.8 * i / 16.0);
  const auto landscape = scan_landscape(j, 3, gammas, kappas, ParallelMap(2), 2);
  const auto seeded = saddle_search(landscape);
  const auto direct = saddle_search(j, 3);
  CHECK(seeded.control.kappa == doctest::Approx(direct.control.kappa).epsilon(5e-3));
  CHECK(seeded.control.gamma_field ==
        doctest::Approx(direct.control.gamma_field).epsilon(5e-3));
  CHECK(seeded.gap == doctest::Approx(direct.gap).epsilon(1e-3));
}

}  // TEST_SUITE
