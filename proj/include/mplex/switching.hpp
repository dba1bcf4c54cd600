#pragma once

// Switching-layer model: k steps on layer 1, then one step on layer 2.

#include "mplex/merged.hpp"
#include "mplex/netcore.hpp"
#include "mplex/spectral.hpp"
#include "mplex/stochastic.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mplex {

enum class LayerChoice { a, b };

class SwitchingModel {
public:
    /// Both layers need positive degrees everywhere; k = 0 is pure layer-2 dynamics.
    SwitchingModel(LayerGraph layer1, LayerGraph layer2, std::uint64_t k);

    std::uint64_t k() const noexcept { return k_; }
    std::uint64_t period() const noexcept { return k_ + 1; }
    std::size_t size() const noexcept { return layer1_.size(); }
    const LayerGraph& layer1() const noexcept { return layer1_; }
    const LayerGraph& layer2() const noexcept { return layer2_; }
    const TransitionMatrix& a() const noexcept { return a_; }
    const TransitionMatrix& b() const noexcept { return b_; }
    /// B A^k
    const TransitionMatrix& cycle() const noexcept { return cycle_; }

private:
    LayerGraph layer1_;
    LayerGraph layer2_;
    std::uint64_t k_;
    TransitionMatrix a_;
    TransitionMatrix b_;
    TransitionMatrix cycle_;
};

/// Layer applied at step t >= 1: B when t mod (k+1) == 0, A otherwise.
LayerChoice schedule_matrix(const SwitchingModel& model, std::uint64_t t);
const TransitionMatrix& step_matrix(const SwitchingModel& model, std::uint64_t t);
const TransitionMatrix& cycle_matrix(const SwitchingModel& model);

enum class SwitchingStatus { consensus, oscillation, undetermined };

struct OscillationEvidence {
    Matrix even_limit;   // (BA^k)^256
    Matrix odd_limit;    // (BA^k)^257
    Vector even_opinions;
    Vector odd_opinions;
};

struct SwitchingOutcome {
    SwitchingStatus status = SwitchingStatus::undetermined;
    std::optional<StationaryDistribution> pi;  // stationary law of BA^k, consensus only
    double value = 0.0;                        // pi . x0, consensus only
    std::optional<OscillationEvidence> evidence;
    double slem_cycle = 0.0;
    double rho_star = 0.0;
};

/// Two-sided period check on the powers of the cycle: returns the even and
/// odd limits when each has settled (1e-9 under one more doubling) and they
/// differ by more than 1e-6.
std::optional<std::pair<Matrix, Matrix>> period_two_limits(const TransitionMatrix& cycle);

SwitchingOutcome analyze(const SwitchingModel& model, std::span<const double> x0);

/// rho2(B) rho2(A)^k max_i(d1_i/d2_i) max_i(d2_i/d1_i); may exceed 1.
double rho_star(const SwitchingModel& model);

/// Stationary law of B A^k; throws NotPrimitive when the cycle is not primitive.
StationaryDistribution switching_stationary(const SwitchingModel& model);

struct KStabilityReport {
    std::vector<std::uint64_t> ks;
    std::vector<double> deviations;          // |x^{s,k} - x^1|, NaN for excluded k
    std::vector<std::uint64_t> excluded;     // k whose cycle is not primitive
    double rho_a = 0.0;
    double fitted_ratio = 0.0;               // exp(slope of log deviation vs k); NaN if < 2 points
    double envelope_constant = 0.0;          // geometric mean of deviation / rho_a^k
    bool within_envelope = true;             // deviation <= 2 c rho_a^k for every included k
};

KStabilityReport k_stability_sweep(const LayerGraph& layer1, const LayerGraph& layer2, std::span<const double> x0,
                                   std::span<const std::uint64_t> ks);

PerturbationPoint switching_perturbation_check(const LayerGraph& layer_a, const LayerGraph& perturbed_b,
                                               std::uint64_t k, std::span<const double> x0);

PerturbationFamilyReport switching_perturbation_family(const LayerGraph& layer_a,
                                                       std::span<const LayerGraph> perturbed, std::uint64_t k,
                                                       std::span<const double> x0);

}  // namespace mplex
