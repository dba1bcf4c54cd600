#pragma once

// Small hand-specified layer pairs with known closed-form behaviour.

#include "mplex/matrix.hpp"
#include "mplex/netcore.hpp"

namespace mplex::fixtures {

struct LayerPair {
    LayerGraph layer1;
    LayerGraph layer2;
};

/// Five nodes, both layers primitive, BA periodic with period two.
LayerPair oscillating_pair();
Matrix oscillating_product();     // BA
Matrix oscillating_even_limit();  // lim (BA)^{2t}
Matrix oscillating_odd_limit();   // lim (BA)^{2t+1}

/// Six nodes with unequal degree sequences; merged SLEM above both layer SLEMs at alpha = 1/2.
LayerPair degree_mismatch_pair();
inline constexpr double degree_mismatch_slem_c = 0.6928;
inline constexpr double degree_mismatch_slem_a = 0.6839;
inline constexpr double degree_mismatch_slem_b = 0.5338;

/// Two 5-cycles (offsets {1,4} and {2,3}, weight 1/2) merging into K5 at alpha = 1/2.
LayerPair circulant_pair();

/// Three nodes; the stationary law of BA lies outside the layer laws componentwise.
LayerPair noninterpolating_pair();
Matrix noninterpolating_product();  // BA
Vector noninterpolating_pi_a();
Vector noninterpolating_pi_b();
Vector noninterpolating_pi_ba();

}  // namespace mplex::fixtures
