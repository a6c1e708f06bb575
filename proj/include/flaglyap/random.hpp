#pragma once

#include <cstdint>
#include <random>

#include "flaglyap/basedyn.hpp"
#include "flaglyap/types.hpp"

namespace flaglyap {

using Rng = std::mt19937_64;

Matrix random_gaussian(int d, Rng& rng, double scale = 1.0);
/// Gaussian matrix rescaled into SL(d, R) (a row is negated when det < 0).
Matrix random_sl(int d, Rng& rng);
Matrix random_traceless(int d, Rng& rng, double scale = 1.0);
Matrix random_antisymmetric(int d, Rng& rng, double scale = 1.0);
/// Haar-like element of SO(d) from the QR of a Gaussian matrix.
Matrix random_special_orthogonal(int d, Rng& rng);
/// Block-diagonal element of SO(d) preserving the flag of the given type.
Matrix random_stabilizer(const ThetaSet& theta, Rng& rng);
/// Random permutation base of n points with cycles no longer than max_cycle
/// and random (cycle-constant) weights.
BaseSystem random_base(int n, int max_cycle, Rng& rng);

}  // namespace flaglyap
