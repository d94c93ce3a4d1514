#include "biphoton/random.hpp"

#include <cmath>

namespace biphoton {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer on master + (index+1)*golden-gamma.
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

long long sample_poisson(Rng& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  if (mean < 32.0) {
    // Product method: count uniforms until their product drops below
    // exp(-mean).
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double limit = std::exp(-mean);
    long long k = 0;
    double p = uniform(rng);
    while (p > limit) {
      ++k;
      p *= uniform(rng);
    }
    return k;
  }
  std::normal_distribution<double> gauss(mean, std::sqrt(mean));
  return std::max(0ll, std::llround(gauss(rng)));
}

QutritState random_pure_state(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector3cd c;
  for (int i = 0; i < 3; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    c(i) = {re, im};
  }
  c.normalize();
  return QutritState::pure(c);
}

QutritState random_mixed_state(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3cd g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = {re, im};
    }
  }
  Eigen::Matrix3cd rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint().eval());  // symmetrize the roundoff
  return QutritState::mixed(rho);
}

Jones2 random_su2(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector4d x;
  do {
    for (int i = 0; i < 4; ++i) x(i) = gauss(rng);
  } while (x.norm() < 1e-6);
  x.normalize();
  Jones2 j;
  const std::complex<double> t{x(0), x(1)};
  const std::complex<double> r{x(2), x(3)};
  j.m << t, r, -std::conj(r), std::conj(t);
  j.unitary = true;
  return j;
}

}  // namespace biphoton
