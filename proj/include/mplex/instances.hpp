#pragma once

// Random problem instances for property checks.

#include "mplex/netcore.hpp"
#include "mplex/random.hpp"
#include "mplex/stochastic.hpp"

namespace mplex {

/// Connected weighted layer containing a triangle (so its walk is primitive).
/// Weights are uniform in [0.5, 2]; n >= 3.
LayerGraph random_primitive_layer(std::size_t n, Rng& rng);

/// Same degree sequence as `layer`, weights moved around 4-cycles
/// (+d on {i,j} and {k,l}, -d on {j,k} and {l,i}). The support only grows,
/// so primitivity is preserved.
LayerGraph degree_preserving_variant(const LayerGraph& layer, Rng& rng, std::size_t moves);

/// Row-stochastic matrix with a positive diagonal and a positive Hamiltonian
/// cycle, other entries zero with probability 0.3.
TransitionMatrix random_primitive_stochastic(std::size_t n, Rng& rng);

/// Uniform opinions in [0, 1].
Vector random_opinions(std::size_t n, Rng& rng);

}  // namespace mplex
