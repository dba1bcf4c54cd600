#pragma once

// Merged-layer model: a single random walk on alpha*W1 + (1-alpha)*W2.

#include "mplex/netcore.hpp"
#include "mplex/spectral.hpp"
#include "mplex/stochastic.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mplex {

class MergedModel {
public:
    /// Requires equal node counts and alpha in [0, 1]; the endpoints are the
    /// single-layer degenerations. Throws IsolatedNode if a node has no
    /// neighbour in the merged graph.
    MergedModel(LayerGraph layer1, LayerGraph layer2, double alpha);

    double alpha() const noexcept { return alpha_; }
    std::size_t size() const noexcept { return layer1_.size(); }
    const LayerGraph& layer1() const noexcept { return layer1_; }
    const LayerGraph& layer2() const noexcept { return layer2_; }
    const LayerGraph& merged_layer() const noexcept { return merged_; }
    const TransitionMatrix& transition() const noexcept { return c_; }

private:
    LayerGraph layer1_;
    LayerGraph layer2_;
    double alpha_;
    LayerGraph merged_;
    TransitionMatrix c_;
};

inline MergedModel merge(const LayerGraph& layer1, const LayerGraph& layer2, double alpha)
{
    return MergedModel(layer1, layer2, alpha);
}

struct MergedPrimitivity {
    /// True when one layer is primitive and alpha lies strictly inside (0, 1).
    bool guaranteed = false;
    std::optional<PrimitivityReport> layer1;  // absent when the layer has an isolated node
    std::optional<PrimitivityReport> layer2;
    PrimitivityReport merged;
};

MergedPrimitivity primitivity_guarantee(const MergedModel& model);

/// Stationary law of C: merged degrees over twice the merged edge weight.
StationaryDistribution merged_stationary(const MergedModel& model);

/// Consensus of the merged dynamics, the |E|-weighted convex combination of
/// the layer consensuses. Throws NotPrimitive if C is not primitive.
double merged_consensus(const MergedModel& model, std::span<const double> x0);

struct ConsensusInterval {
    double layer1 = 0.0;  // x^1(inf)
    double layer2 = 0.0;  // x^2(inf)
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x, double slack = 0.0) const noexcept { return x >= lo - slack && x <= hi + slack; }
};

/// [min, max] of the two single-layer consensuses; both layers must be primitive.
ConsensusInterval consensus_interval(const MergedModel& model, std::span<const double> x0);

struct MergedBoundsReport {
    double slem_c = 0.0;
    double slem_a = 0.0;
    double slem_b = 0.0;
    double lower_bound = 0.0;  // 1/(N-1)
    double upper_bound = 0.0;  // max{rho2(A), rho2(B)}
    bool degrees_matched = false;
    bool lower_holds = false;
    /// Only meaningful when degrees_matched.
    bool upper_holds = false;
    SpectralMethod method = SpectralMethod::nonsymmetric;
};

/// Relative tolerance for deciding d1 == d2 entrywise.
inline constexpr double degree_match_tol = 1e-9;
bool degrees_matched(const LayerGraph& a, const LayerGraph& b, double rel_tol = degree_match_tol);

MergedBoundsReport slem_bounds(const MergedModel& model);

struct AlphaStabilityReport {
    std::vector<double> alphas;
    std::vector<double> deviations;  // |x^m(inf) - x^1(inf)|
    double bound_constant = 0.0;     // |E2| / min(|E1|,|E2|) * |x^2 - x^1|
    double fitted_constant = 0.0;    // least squares c in |dev| ~ c (1 - alpha)
    double loglog_slope = 0.0;       // slope of log|dev| vs log(1-alpha); NaN when undefined
    bool within_bound = true;
};

AlphaStabilityReport alpha_stability_sweep(const LayerGraph& layer1, const LayerGraph& layer2,
                                           std::span<const double> x0, std::span<const double> alphas);

struct PerturbationPoint {
    double consensus_difference = 0.0;  // |x^m(inf) - x^1(inf)| (merged) or |x^s(inf) - x^1(inf)|
    double matrix_difference = 0.0;     // ||A - B||_max
};

/// One member of a perturbation family for the merged model.
PerturbationPoint merged_perturbation_check(const LayerGraph& layer_a, const LayerGraph& perturbed_b, double alpha,
                                            std::span<const double> x0);

struct PerturbationFamilyReport {
    std::vector<PerturbationPoint> points;
    double loglog_slope = 0.0;     // of consensus difference vs matrix difference
    double fitted_constant = 0.0;  // median ratio
    /// Every ratio within a factor of 2 of the fitted constant.
    bool proportional = false;
    /// False when the family is outside the small-perturbation regime (no assertion made).
    bool armed = false;
};

/// Regime gate: families whose largest ||A - B||_max exceeds this are reported only.
inline constexpr double small_perturbation_gate = 0.1;

PerturbationFamilyReport summarize_perturbation_family(std::vector<PerturbationPoint> points);

PerturbationFamilyReport merged_perturbation_family(const LayerGraph& layer_a,
                                                    std::span<const LayerGraph> perturbed, double alpha,
                                                    std::span<const double> x0);

}  // namespace mplex
