#include "mplex/switching.hpp"

#include "mplex/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mplex {
namespace {

TransitionMatrix checked_transition(const LayerGraph& layer, const LayerGraph& other)
{
    if (layer.size() != other.size()) throw InvalidArgument("switching: layers have different node counts");
    return transition_matrix(layer);
}

double single_layer_consensus(const LayerGraph& layer, std::span<const double> x0, const char* where)
{
    const PrimitivityReport r = is_primitive(transition_matrix(layer));
    if (!r.primitive) throw NotPrimitive(where, r);
    return consensus_value(stationary_from_degrees(layer), x0);
}

}  // namespace

SwitchingModel::SwitchingModel(LayerGraph layer1, LayerGraph layer2, std::uint64_t k)
    : layer1_(std::move(layer1)),
      layer2_(std::move(layer2)),
      k_(k),
      a_(checked_transition(layer1_, layer2_)),
      b_(transition_matrix(layer2_)),
      cycle_(b_ * power(a_, k))
{
}

LayerChoice schedule_matrix(const SwitchingModel& model, std::uint64_t t)
{
    if (t == 0) throw InvalidArgument("schedule_matrix: steps are numbered from 1");
    return t % model.period() == 0 ? LayerChoice::b : LayerChoice::a;
}

const TransitionMatrix& step_matrix(const SwitchingModel& model, std::uint64_t t)
{
    return schedule_matrix(model, t) == LayerChoice::b ? model.b() : model.a();
}

const TransitionMatrix& cycle_matrix(const SwitchingModel& model) { return model.cycle(); }

std::optional<std::pair<Matrix, Matrix>> period_two_limits(const TransitionMatrix& cycle)
{
    const Matrix& m = cycle.matrix();
    Matrix p = m;
    for (int i = 0; i < 7; ++i) p = p * p;  // m^128
    const Matrix q = p * m;
    const Matrix p2 = p * p;
    const Matrix q2 = p2 * m;
    const bool settled = max_abs_diff(p2, p) <= 1e-9 && max_abs_diff(q2, q) <= 1e-9;
    if (!settled || max_abs_diff(p2, q2) <= 1e-6) return std::nullopt;
    return std::make_pair(p2, q2);
}

double rho_star(const SwitchingModel& model)
{
    const double ra = slem_reversible(model.layer1()).slem;
    const double rb = slem_reversible(model.layer2()).slem;
    double r12 = 0.0, r21 = 0.0;
    for (std::size_t i = 0; i < model.size(); ++i) {
        const double d1 = model.layer1().degree(i), d2 = model.layer2().degree(i);
        r12 = std::max(r12, d1 / d2);
        r21 = std::max(r21, d2 / d1);
    }
    return rb * std::pow(ra, static_cast<double>(model.k())) * r12 * r21;
}

StationaryDistribution switching_stationary(const SwitchingModel& model) { return stationary_general(model.cycle()); }

SwitchingOutcome analyze(const SwitchingModel& model, std::span<const double> x0)
{
    if (x0.size() != model.size()) throw InvalidArgument("analyze: length mismatch");
    require_opinions(x0, "analyze");
    SwitchingOutcome out;
    out.slem_cycle = slem(model.cycle());
    out.rho_star = rho_star(model);
    if (is_primitive(model.cycle()).primitive) {
        out.pi = stationary_general(model.cycle());
        out.value = consensus_value(*out.pi, x0);
        out.status = out.slem_cycle < 1.0 ? SwitchingStatus::consensus : SwitchingStatus::undetermined;
        return out;
    }
    if (auto limits = period_two_limits(model.cycle())) {
        OscillationEvidence ev{std::move(limits->first), std::move(limits->second), {}, {}};
        ev.even_opinions = ev.even_limit * x0;
        ev.odd_opinions = ev.odd_limit * x0;
        if (max_abs_diff(ev.even_opinions, ev.odd_opinions) > 1e-6) out.status = SwitchingStatus::oscillation;
        out.evidence = std::move(ev);
    }
    return out;
}

KStabilityReport k_stability_sweep(const LayerGraph& layer1, const LayerGraph& layer2, std::span<const double> x0,
                                   std::span<const std::uint64_t> ks)
{
    require_opinions(x0, "k_stability_sweep");
    KStabilityReport out;
    const double x1 = single_layer_consensus(layer1, x0, "k_stability_sweep (layer 1)");
    out.rho_a = slem_reversible(layer1).slem;

    std::vector<double> kk, dev;
    for (std::uint64_t k : ks) {
        const SwitchingModel model(layer1, layer2, k);
        out.ks.push_back(k);
        if (!is_primitive(model.cycle()).primitive) {
            out.excluded.push_back(k);
            out.deviations.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        const double d = std::fabs(consensus_value(switching_stationary(model), x0) - x1);
        out.deviations.push_back(d);
        if (d > 0.0) {
            kk.push_back(static_cast<double>(k));
            dev.push_back(d);
        }
    }

    out.fitted_ratio = std::numeric_limits<double>::quiet_NaN();
    if (kk.size() >= 2) {
        std::vector<double> logs(dev.size());
        for (std::size_t i = 0; i < dev.size(); ++i) logs[i] = std::log(dev[i]);
        out.fitted_ratio = std::exp(linear_fit(kk, logs).slope);
    }
    if (!kk.empty() && out.rho_a > 0.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < kk.size(); ++i) acc += std::log(dev[i]) - kk[i] * std::log(out.rho_a);
        out.envelope_constant = std::exp(acc / static_cast<double>(kk.size()));
        for (std::size_t i = 0; i < kk.size(); ++i)
            if (dev[i] > 2.0 * out.envelope_constant * std::pow(out.rho_a, kk[i]) + 1e-15) out.within_envelope = false;
    }
    return out;
}

PerturbationPoint switching_perturbation_check(const LayerGraph& layer_a, const LayerGraph& perturbed_b,
                                               std::uint64_t k, std::span<const double> x0)
{
    const double x1 = single_layer_consensus(layer_a, x0, "switching_perturbation_check (A)");
    const SwitchingModel model(layer_a, perturbed_b, k);
    const double xs = consensus_value(switching_stationary(model), x0);
    return {std::fabs(xs - x1), max_abs_diff(model.a().matrix(), model.b().matrix())};
}

PerturbationFamilyReport switching_perturbation_family(const LayerGraph& layer_a,
                                                       std::span<const LayerGraph> perturbed, std::uint64_t k,
                                                       std::span<const double> x0)
{
    std::vector<PerturbationPoint> points;
    for (const auto& b : perturbed) points.push_back(switching_perturbation_check(layer_a, b, k, x0));
    return summarize_perturbation_family(std::move(points));
}

}  // namespace mplex
