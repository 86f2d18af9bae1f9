#pragma once

// Seeded random generators for the verification corpora.

#include <random>
#include <vector>

#include "quasipoly.hpp"

namespace trigdarboux {

using Rng = std::mt19937_64;

struct TrigSpec {
    SpectralData data;
    std::vector<KernelChainSpec> chains;
};

/// Small Gaussian rational with numerator in [-range, range] and denominator in [1, max_den].
GaussianRational random_scalar(Rng& rng, long range = 3, long max_den = 3, bool complex = true);
GaussianRational random_nonzero_scalar(Rng& rng, long range = 3, long max_den = 3, bool complex = true);

/// Spectral data with one or two lattices and deg h <= max_degree.
SpectralData random_spectral_data(Rng& rng, unsigned max_degree = 6);

/// Random chain for lattice r; nullopt-equivalent empty terms never returned.
KernelChainSpec random_chain(Rng& rng, const SpectralData& data, std::size_t r);

/// Chains whose expansion is linearly independent, of total order in [1, max_order].
/// require_mixed rejects kernels spanned by pure exponential monomials (constant-coefficient P).
TrigSpec random_trig_spec(Rng& rng, unsigned max_order = 4, bool require_mixed = false);

/// Kernel inside ker h built to break chain closure: a chain with its tail removed,
/// or an x-dependent element without its lowered partners. Every element stays on one lattice.
std::vector<QuasiPoly> random_violating_kernel(Rng& rng, const SpectralData& data, unsigned max_order = 4);

} // namespace trigdarboux
