#pragma once

// Exact stationary-distribution perturbation through the fundamental matrix.

#include "mplex/matrix.hpp"
#include "mplex/stochastic.hpp"

namespace mplex {

struct PerturbationReport {
    Matrix e_matrix;           // P~ - P
    Matrix z_matrix;           // (I - P + 1 pi^T)^{-1}
    Vector delta_predicted;    // pi [(I - E Z)^{-1} - I], exact
    Vector delta_first_order;  // pi E Z
    Vector delta_actual;       // pi~ - pi from separate stationary solves
    double max_norm_e = 0.0;
};

/// Z = (I - P + 1 pi^T)^{-1}. Rejects a pi that is not stationary for P
/// (residual above 1e-10) and a singular or inaccurately inverted system.
Matrix fundamental_matrix(const TransitionMatrix& p, const StationaryDistribution& pi);

/// Both matrices must be primitive (NotPrimitive otherwise).
PerturbationReport stationary_shift(const TransitionMatrix& p, const TransitionMatrix& p_tilde);

/// ||pi~ - pi||_max / ||P~ - P||_max. Rejects P~ == P.
double shift_bound_check(const TransitionMatrix& p, const TransitionMatrix& p_tilde);

}  // namespace mplex
