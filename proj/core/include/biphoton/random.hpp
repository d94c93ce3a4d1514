#pragma once

#include <cstdint>
#include <random>

#include "biphoton/jones.hpp"
#include "biphoton/state.hpp"

namespace biphoton {

using Rng = std::mt19937_64;

/// Derives an independent child seed from a master seed (splitmix64 of
/// master + index), so per-setting and per-grid-point streams never depend
/// on evaluation order.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

/// Poisson draw: exact product method below mean 32, rounded Gaussian
/// (clamped at zero) above, where the approximation error is far below the
/// shot noise.
long long sample_poisson(Rng& rng, double mean);

/// Haar-like random pure state: normalized complex Gaussian triple.
QutritState random_pure_state(Rng& rng);

/// Random full-rank mixed state G G^dag / tr(G G^dag) with Ginibre G.
QutritState random_mixed_state(Rng& rng);

/// Haar-random canonical-form unitary [[t, r], [-conj(r), conj(t)]].
Jones2 random_su2(Rng& rng);

}  // namespace biphoton
