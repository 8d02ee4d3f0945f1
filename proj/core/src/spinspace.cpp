#include "spingap/spinspace.hpp"

#include <cmath>
#include <string>

#include "spingap/errors.hpp"

namespace spingap {

TotalSpin TotalSpin::from_value(double j) {
  const double two_j = 2.0 * j;
  const double rounded = std::round(two_j);
  if (!(j >= 0.0) || std::abs(two_j - rounded) > 1e-9)
    throw ConfigError("total spin must be a non-negative half-integer, got " +
                      std::to_string(j));
  return TotalSpin{static_cast<int>(rounded)};
}

TotalSpin TotalSpin::from_two_j(int two_j) {
  if (two_j < 0) throw ConfigError("total spin must be non-negative");
  return TotalSpin{two_j};
}

void SpinParams::validate() const {
  if (j.two_j < 0) throw ConfigError("SpinParams: invalid spin");
  if (power < 2) throw ConfigError("SpinParams: interaction power must be >= 2");
  if (!(control.gamma_field >= 0.0 && control.gamma_field <= 1.0))
    throw ConfigError("SpinParams: Gamma must lie in [0, 1]");
  if (!(control.kappa >= 0.0 && control.kappa <= 1.0))
    throw ConfigError("SpinParams: kappa must lie in [0, 1]");
}

double SpinParams::annealing_ratio() const {
  if (control.gamma_field >= 1.0)
    throw ConfigError("annealing ratio gamma = Gamma/(1-Gamma) undefined at Gamma = 1");
  return control.gamma_field / (1.0 - control.gamma_field);
}

BandedSymmetricMatrix build_jz(TotalSpin j) {
  BandedSymmetricMatrix m(j.dimension(), 0);
  for (std::size_t i = 0; i < j.dimension(); ++i)
    m.band_entry(0, i) = j.magnetic_number(i);
  return m;
}

BandedSymmetricMatrix build_jx(TotalSpin j) {
  const std::size_t dim = j.dimension();
  BandedSymmetricMatrix m(dim, dim > 1 ? 1 : 0);
  const double jv = j.value();
  for (std::size_t i = 0; i + 1 < dim; ++i) {
    const double mv = j.magnetic_number(i);
    // <m+1| J+ |m> = sqrt(j^2 - m^2 + j - m); Jx = (J+ + J-)/2.
    m.band_entry(1, i) = 0.5 * std::sqrt(jv * jv - mv * mv + jv - mv);
  }
  return m;
}

BandedSymmetricMatrix build_pspin_hamiltonian(const SpinParams& params) {
  params.validate();
  const double jv = params.j.value();
  if (jv == 0.0) throw ConfigError("p-spin Hamiltonian needs j > 0");
  const double gamma = params.control.gamma_field;
  const double kappa = params.control.kappa;
  const std::size_t dim = params.j.dimension();

  BandedSymmetricMatrix h(dim, std::min<std::size_t>(2, dim - 1));

  BandedSymmetricMatrix jx = build_jx(params.j);
  h.add_scaled(jx, -gamma / jv);

  for (std::size_t i = 0; i < dim; ++i) {
    const double z = params.j.magnetic_number(i) / jv;
    h.band_entry(0, i) += -kappa * (1.0 - gamma) * std::pow(z, params.power);
  }

  const BandedSymmetricMatrix jx2 = banded_square(jx);
  h.add_scaled(jx2, (1.0 - gamma) * (1.0 - kappa) / (jv * jv));
  return h;
}

BandedSymmetricMatrix build_lmg_hamiltonian(TotalSpin j, double gamma_x, double gamma_z) {
  if (!(gamma_x >= 0.0 && gamma_x <= 1.0))
    throw ConfigError("LMG: Gamma_x must lie in [0, 1]");
  if (!(gamma_z >= -1.0 && gamma_z <= 1.0))
    throw ConfigError("LMG: Gamma_z must lie in [-1, 1]");
  const double jv = j.value();
  if (jv == 0.0) throw ConfigError("LMG Hamiltonian needs j > 0");
  const std::size_t dim = j.dimension();

  BandedSymmetricMatrix h(dim, 1);
  h.add_scaled(build_jx(j), -gamma_x / jv);
  for (std::size_t i = 0; i < dim; ++i) {
    const double z = j.magnetic_number(i) / jv;
    h.band_entry(0, i) +=
        -(1.0 - gamma_x) * ((1.0 - std::abs(gamma_z)) * z * z + gamma_z * z);
  }
  return h;
}

double mean_field_energy(double theta, const SpinParams& params) {
  const double gamma = params.control.gamma_field;
  const double kappa = params.control.kappa;
  const double c = std::cos(theta), s = std::sin(theta);
  return -gamma * c - kappa * (1.0 - gamma) * std::pow(s, params.power) +
         (1.0 - gamma) * (1.0 - kappa) * c * c;
}

SpinVectorStats spin_vector_stats(std::span<const double> amplitudes, TotalSpin j) {
  const std::size_t dim = j.dimension();
  if (amplitudes.size() != dim)
    throw ConfigError("spin_vector_stats: state dimension mismatch");
  double norm2 = 0.0;
  for (double a : amplitudes) norm2 += a * a;
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw ConfigError("spin_vector_stats: state vector is not normalized");

  const double jv = j.value();
  const BandedSymmetricMatrix jx = build_jx(j);
  const BandedSymmetricMatrix jx2 = banded_square(jx);

  double mean_z = 0.0, mean_zz = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double m = j.magnetic_number(i);
    mean_z += m * amplitudes[i] * amplitudes[i];
    mean_zz += m * m * amplitudes[i] * amplitudes[i];
  }
  const auto jx_psi = jx.apply(amplitudes);
  const auto jx2_psi = jx2.apply(amplitudes);
  double mean_x = 0.0, mean_xx = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    mean_x += amplitudes[i] * jx_psi[i];
    mean_xx += amplitudes[i] * jx2_psi[i];
  }
  const double mean_yy = jv * (jv + 1.0) - mean_xx - mean_zz;

  const double var = (mean_xx - mean_x * mean_x) + mean_yy + (mean_zz - mean_z * mean_z);
  SpinVectorStats out;
  out.r = std::sqrt(mean_x * mean_x + mean_z * mean_z) / jv;
  out.theta = std::atan2(mean_z, mean_x);
  out.delta_r = std::sqrt(std::max(var, 0.0)) / jv;
  return out;
}

std::vector<double> coherent_state(TotalSpin j, double theta) {
  const std::size_t dim = j.dimension();
  const int n = j.two_j;
  // Rotate |j, m=j> about y by alpha = pi/2 - theta so <Jx> = j cos(theta),
  // <Jz> = j sin(theta). Binomial amplitudes evaluated in log space.
  const double alpha = 0.5 * M_PI - theta;
  const double c = std::cos(0.5 * alpha), s = std::sin(0.5 * alpha);
  std::vector<double> psi(dim, 0.0);
  if (std::abs(c) < 1e-300) {
    psi[0] = 1.0;  // all spins down
    return psi;
  }
  if (std::abs(s) < 1e-300) {
    psi[dim - 1] = 1.0;
    return psi;
  }
  const double lc = std::log(std::abs(c)), ls = std::log(std::abs(s));
  double norm2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const int up = static_cast<int>(i);  // number of "up" qubits = j + m
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(up + 1.0) -
                             std::lgamma(n - up + 1.0);
    const double log_amp = 0.5 * log_binom + up * lc + (n - up) * ls;
    const double sign = ((c < 0 && (up % 2)) ^ (s < 0 && ((n - up) % 2))) ? -1.0 : 1.0;
    psi[i] = sign * std::exp(log_amp);
    norm2 += psi[i] * psi[i];
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& a : psi) a *= inv;
  return psi;
}

}  // namespace spingap
