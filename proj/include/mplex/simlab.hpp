#pragma once

// Trajectory simulation and error-series analysis.

#include "mplex/matrix.hpp"
#include "mplex/stochastic.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace mplex {

/// Matrix applied at step t >= 1.
using Schedule = std::function<const TransitionMatrix&(std::uint64_t)>;

struct SimulationOptions {
    std::uint64_t t_max = 1'000'000;
    double tol = 1e-12;
    /// Schedule period; the stop rule needs `period` consecutive small steps.
    std::uint64_t period = 1;
    /// Consensus value the errors are measured against.
    std::optional<double> consensus_target;
    /// Weights of the pi-norm error; required together with consensus_target.
    std::optional<StationaryDistribution> norm_weights;
    bool keep_states = false;
};

struct OpinionTrajectory {
    Vector initial;
    Vector final_state;
    std::vector<Vector> states;  // x(0..steps) when keep_states
    std::vector<double> errors_pi;
    std::vector<double> errors_max;
    std::optional<double> consensus_target;
    double pi_min = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t period = 1;
    bool converged = false;
    /// Not converged, and x(t) returns to x(t - 2 period) while differing from x(t - period).
    bool oscillation = false;
    /// Every state stayed inside [min x0, max x0] up to 1e-12.
    bool convex_closure = true;
};

OpinionTrajectory simulate(const Schedule& schedule, std::span<const double> x0, const SimulationOptions& options);

/// Convenience wrapper for a fixed matrix.
OpinionTrajectory simulate(const TransitionMatrix& m, std::span<const double> x0, const SimulationOptions& options);

struct DecayCheck {
    bool passed = true;      // pi-norm envelope rho^t ||e(0)||_pi
    bool max_passed = true;  // max-norm envelope rho^t ||e(0)||_pi / sqrt(pi_min)
    double margin = 0.0;     // smallest (bound - error) over t, pi-norm
    double max_margin = 0.0;
    std::uint64_t first_violation = 0;
};

/// Throws InvalidArgument when the trajectory carries no consensus target.
DecayCheck decay_check(const OpinionTrajectory& trajectory, double rho);

/// Floor below which error entries are treated as rounding noise.
double error_floor(double e0);

/// Geometric rate of `errors` sampled every `stride` entries, truncated at
/// the first entry under error_floor(errors[0]). Empty when fewer than five
/// usable samples remain.
std::optional<double> empirical_rate(std::span<const double> errors, std::uint64_t stride = 1);

}  // namespace mplex
