#include "mplex/merged.hpp"

#include "mplex/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mplex {
namespace {

LayerGraph merged_weights(const LayerGraph& l1, const LayerGraph& l2, double alpha)
{
    if (l1.size() != l2.size()) throw InvalidArgument("merge: layers have different node counts");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("merge: alpha must lie in [0, 1]");
    const std::size_t n = l1.size();
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w(i, j) = alpha * l1.weight(i, j) + (1.0 - alpha) * l2.weight(i, j);
    return LayerGraph::from_weights(std::move(w));
}

TransitionMatrix merged_transition(const LayerGraph& merged)
{
    for (std::size_t i = 0; i < merged.size(); ++i)
        if (!(merged.degree(i) > 0.0)) throw IsolatedNode(i, "merge");
    return TransitionMatrix::from_matrix(transition_matrix(merged).matrix(), Provenance::merged);
}

std::optional<PrimitivityReport> layer_primitivity(const LayerGraph& layer)
{
    if (layer.has_isolated_node()) return std::nullopt;
    return is_primitive(transition_matrix(layer));
}

double layer_consensus(const LayerGraph& layer, std::span<const double> x0, const char* which)
{
    const auto report = layer_primitivity(layer);
    if (!report || !report->primitive) throw NotPrimitive(which, report.value_or(PrimitivityReport{}));
    return consensus_value(stationary_from_degrees(layer), x0);
}

// sum_i d_i x_i / (2|E|), defined whenever the layer has at least one edge.
double degree_weighted_mean(const LayerGraph& layer, std::span<const double> x0)
{
    return dot(layer.degrees(), x0) / (2.0 * layer.total_edge_weight());
}

}  // namespace

MergedModel::MergedModel(LayerGraph layer1, LayerGraph layer2, double alpha)
    : layer1_(std::move(layer1)),
      layer2_(std::move(layer2)),
      alpha_(alpha),
      merged_(merged_weights(layer1_, layer2_, alpha)),
      c_(merged_transition(merged_))
{
}

MergedPrimitivity primitivity_guarantee(const MergedModel& model)
{
    MergedPrimitivity out;
    out.layer1 = layer_primitivity(model.layer1());
    out.layer2 = layer_primitivity(model.layer2());
    const bool some_layer = (out.layer1 && out.layer1->primitive) || (out.layer2 && out.layer2->primitive);
    out.guaranteed = some_layer && model.alpha() > 0.0 && model.alpha() < 1.0;
    out.merged = is_primitive(model.transition());
    return out;
}

StationaryDistribution merged_stationary(const MergedModel& model)
{
    return stationary_from_degrees(model.merged_layer());
}

double merged_consensus(const MergedModel& model, std::span<const double> x0)
{
    if (x0.size() != model.size()) throw InvalidArgument("merged_consensus: length mismatch");
    require_opinions(x0, "merged_consensus");
    const PrimitivityReport report = is_primitive(model.transition());
    if (!report.primitive) throw NotPrimitive("merged_consensus", report);
    return consensus_value(merged_stationary(model), x0);
}

ConsensusInterval consensus_interval(const MergedModel& model, std::span<const double> x0)
{
    if (x0.size() != model.size()) throw InvalidArgument("consensus_interval: length mismatch");
    require_opinions(x0, "consensus_interval");
    ConsensusInterval out;
    out.layer1 = layer_consensus(model.layer1(), x0, "consensus_interval (layer 1)");
    out.layer2 = layer_consensus(model.layer2(), x0, "consensus_interval (layer 2)");
    out.lo = std::min(out.layer1, out.layer2);
    out.hi = std::max(out.layer1, out.layer2);
    return out;
}

bool degrees_matched(const LayerGraph& a, const LayerGraph& b, double rel_tol)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a.degree(i), db = b.degree(i);
        if (std::fabs(da - db) > rel_tol * std::max(std::fabs(da), std::fabs(db))) return false;
    }
    return true;
}

MergedBoundsReport slem_bounds(const MergedModel& model)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    MergedBoundsReport out;
    // C is the walk on the undirected merged graph, hence reversible.
    out.slem_c = slem_reversible(model.merged_layer()).slem;
    out.method = SpectralMethod::symmetric;
    out.slem_a = model.layer1().has_isolated_node() ? nan : slem_reversible(model.layer1()).slem;
    out.slem_b = model.layer2().has_isolated_node() ? nan : slem_reversible(model.layer2()).slem;
    const std::size_t n = model.size();
    out.lower_bound = n > 1 ? 1.0 / static_cast<double>(n - 1) : 0.0;
    out.upper_bound = std::max(out.slem_a, out.slem_b);
    if (std::isnan(out.slem_a) || std::isnan(out.slem_b)) out.upper_bound = nan;
    out.degrees_matched = degrees_matched(model.layer1(), model.layer2());
    out.lower_holds = out.slem_c >= out.lower_bound - 1e-9;
    out.upper_holds = out.degrees_matched && out.slem_c <= out.upper_bound + 1e-9;
    return out;
}

AlphaStabilityReport alpha_stability_sweep(const LayerGraph& layer1, const LayerGraph& layer2,
                                           std::span<const double> x0, std::span<const double> alphas)
{
    require_opinions(x0, "alpha_stability_sweep");
    AlphaStabilityReport out;
    const double x1 = layer_consensus(layer1, x0, "alpha_stability_sweep (layer 1)");
    const double x2 = degree_weighted_mean(layer2, x0);
    const double e1 = layer1.total_edge_weight();
    const double e2 = layer2.total_edge_weight();
    out.bound_constant = e2 / std::min(e1, e2) * std::fabs(x2 - x1);

    std::vector<double> gaps;
    double num = 0.0, den = 0.0;
    for (double alpha : alphas) {
        const MergedModel model(layer1, layer2, alpha);
        const double dev = std::fabs(merged_consensus(model, x0) - x1);
        const double gap = 1.0 - alpha;
        out.alphas.push_back(alpha);
        out.deviations.push_back(dev);
        gaps.push_back(gap);
        num += dev * gap;
        den += gap * gap;
        if (dev > out.bound_constant * gap + 1e-12) out.within_bound = false;
    }
    out.fitted_constant = den > 0.0 ? num / den : 0.0;
    out.loglog_slope = loglog_slope(gaps, out.deviations);
    return out;
}

PerturbationPoint merged_perturbation_check(const LayerGraph& layer_a, const LayerGraph& perturbed_b, double alpha,
                                            std::span<const double> x0)
{
    const TransitionMatrix a = transition_matrix(layer_a);
    const TransitionMatrix b = transition_matrix(perturbed_b);
    if (const auto r = is_primitive(a); !r.primitive) throw NotPrimitive("merged_perturbation_check (A)", r);
    if (const auto r = is_primitive(b); !r.primitive) throw NotPrimitive("merged_perturbation_check (B)", r);
    const double x1 = consensus_value(stationary_from_degrees(layer_a), x0);
    const double xm = merged_consensus(MergedModel(layer_a, perturbed_b, alpha), x0);
    return {std::fabs(xm - x1), max_abs_diff(a.matrix(), b.matrix())};
}

PerturbationFamilyReport summarize_perturbation_family(std::vector<PerturbationPoint> points)
{
    PerturbationFamilyReport out;
    std::vector<double> md, cd, ratios;
    double largest = 0.0;
    for (const auto& p : points) {
        largest = std::max(largest, p.matrix_difference);
        if (p.matrix_difference > 0.0 && p.consensus_difference > 0.0) {
            md.push_back(p.matrix_difference);
            cd.push_back(p.consensus_difference);
            ratios.push_back(p.consensus_difference / p.matrix_difference);
        }
    }
    out.points = std::move(points);
    out.loglog_slope = loglog_slope(md, cd);
    out.armed = ratios.size() >= 2 && largest <= small_perturbation_gate;
    if (!ratios.empty()) {
        std::vector<double> sorted = ratios;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t m = sorted.size();
        out.fitted_constant = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
        out.proportional = std::all_of(ratios.begin(), ratios.end(), [&](double r) {
            return r <= 2.0 * out.fitted_constant && r >= 0.5 * out.fitted_constant;
        });
    }
    return out;
}

PerturbationFamilyReport merged_perturbation_family(const LayerGraph& layer_a,
                                                    std::span<const LayerGraph> perturbed, double alpha,
                                                    std::span<const double> x0)
{
    std::vector<PerturbationPoint> points;
    for (const auto& b : perturbed) points.push_back(merged_perturbation_check(layer_a, b, alpha, x0));
    return summarize_perturbation_family(std::move(points));
}

}  // namespace mplex
