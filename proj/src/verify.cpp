#include "mplex/verify.hpp"

#include "mplex/error.hpp"
#include "mplex/experiment.hpp"
#include "mplex/fixtures.hpp"
#include "mplex/instances.hpp"
#include "mplex/merged.hpp"
#include "mplex/perturb.hpp"
#include "mplex/simlab.hpp"
#include "mplex/spectral.hpp"
#include "mplex/switching.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace mplex {
namespace {

std::string num(double v) { return format_double(v); }

CheckResult within(std::string name, double got, double want, double tol)
{
    const double err = std::fabs(got - want);
    return {std::move(name), err <= tol, "got " + num(got) + " want " + num(want) + " err " + num(err)};
}

CheckResult matrix_within(std::string name, const Matrix& got, const Matrix& want, double tol)
{
    const double err = max_abs_diff(got, want);
    return {std::move(name), err <= tol, "max entry error " + num(err)};
}

CheckResult vector_within(std::string name, const Vector& got, const Vector& want, double tol)
{
    const double err = max_abs_diff(got, want);
    return {std::move(name), err <= tol, "max entry error " + num(err)};
}

struct Counter {
    explicit Counter(std::string n) : name(std::move(n)) {}

    std::string name;
    std::size_t total = 0;
    std::size_t bad = 0;
    std::string first;

    void add(bool ok, const std::string& what)
    {
        ++total;
        if (!ok && bad++ == 0) first = what;
    }
    CheckResult result() const
    {
        std::string d = std::to_string(bad) + " violations in " + std::to_string(total) + " cases";
        if (bad) d += "; first: " + first;
        return {name, bad == 0, d};
    }
};

bool in_band(double slope, double want, double band) { return std::isfinite(slope) && std::fabs(slope - want) <= band; }

}  // namespace

bool SuiteReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<CheckResult> check_oscillating_pair()
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> out;
    const auto [l1, l2] = fixtures::oscillating_pair();
    const SwitchingModel model(l1, l2, 1);
    out.push_back(matrix_within("product BA", model.cycle().matrix(), fixtures::oscillating_product(), 1e-12));
    const auto limits = period_two_limits(model.cycle());
    out.push_back({"period-two limits exist", limits.has_value(), limits ? "settled and distinct" : "not detected"});
    if (limits) {
        out.push_back(matrix_within("even power limit", limits->first, fixtures::oscillating_even_limit(), 1e-9));
        out.push_back(matrix_within("odd power limit", limits->second, fixtures::oscillating_odd_limit(), 1e-9));
    }
    const Vector x0{1, 0, 0, 0, 0};
    const SwitchingOutcome outcome = analyze(model, x0);
    out.push_back({"analyze reports oscillation", outcome.status == SwitchingStatus::oscillation,
                   "slem(BA) " + num(outcome.slem_cycle)});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back({"runtime under 1 s", secs < 1.0, num(secs) + " s"});
    return out;
}

std::vector<CheckResult> check_degree_mismatch_pair()
{
    std::vector<CheckResult> out;
    const auto [l1, l2] = fixtures::degree_mismatch_pair();
    const MergedModel model(l1, l2, 0.5);
    const MergedBoundsReport r = slem_bounds(model);
    out.push_back(within("slem C", r.slem_c, fixtures::degree_mismatch_slem_c, 1e-3));
    out.push_back(within("slem A", r.slem_a, fixtures::degree_mismatch_slem_a, 1e-3));
    out.push_back(within("slem B", r.slem_b, fixtures::degree_mismatch_slem_b, 1e-3));
    out.push_back({"slem C above both layers", r.slem_c > std::max(r.slem_a, r.slem_b) && !r.degrees_matched,
                   num(r.slem_c) + " vs " + num(std::max(r.slem_a, r.slem_b))});
    out.push_back(within("nonsymmetric route agrees on C", slem(model.transition()), r.slem_c, 1e-8));
    return out;
}

std::vector<CheckResult> check_circulant_pair()
{
    std::vector<CheckResult> out;
    const auto [l1, l2] = fixtures::circulant_pair();
    const MergedModel model(l1, l2, 0.5);
    Matrix k5(5, 5, 0.25);
    for (std::size_t i = 0; i < 5; ++i) k5(i, i) = 0.0;
    out.push_back(matrix_within("merged C is the complete-graph walk", model.transition().matrix(), k5, 1e-12));
    const MergedBoundsReport r = slem_bounds(model);
    out.push_back(within("slem C", r.slem_c, 0.25, 1e-10));
    out.push_back(within("slem C attains 1/(N-1)", r.slem_c, r.lower_bound, 1e-10));
    const double c = std::fabs(std::cos(4.0 * std::numbers::pi / 5.0));
    out.push_back(within("slem layer 1", r.slem_a, c, 1e-10));
    out.push_back(within("slem layer 2", r.slem_b, c, 1e-10));
    return out;
}

std::vector<CheckResult> check_noninterpolating_pair()
{
    std::vector<CheckResult> out;
    const auto [l1, l2] = fixtures::noninterpolating_pair();
    const SwitchingModel model(l1, l2, 1);
    out.push_back(matrix_within("product BA", model.cycle().matrix(), fixtures::noninterpolating_product(), 1e-12));
    const Vector pa = stationary_from_degrees(l1).values();
    const Vector pb = stationary_from_degrees(l2).values();
    const Vector pba = switching_stationary(model).values();
    out.push_back(vector_within("pi_A", pa, fixtures::noninterpolating_pi_a(), 1e-10));
    out.push_back(vector_within("pi_B", pb, fixtures::noninterpolating_pi_b(), 1e-10));
    out.push_back(vector_within("pi_BA", pba, fixtures::noninterpolating_pi_ba(), 1e-10));
    bool outside = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const double lo = std::min(pa[i], pb[i]), hi = std::max(pa[i], pb[i]);
        outside = outside && (pba[i] < lo || pba[i] > hi);
    }
    out.push_back({"pi_BA outside [pi_A, pi_B] componentwise", outside, ""});
    const Vector x0{1, 0, 0};
    const SwitchingOutcome o = analyze(model, x0);
    out.push_back({"switching consensus status", o.status == SwitchingStatus::consensus, ""});
    out.push_back(within("switching consensus value", o.value, 0.3, 1e-10));
    return out;
}

std::vector<CheckResult> check_random_bounds(const BoundsSuiteOptions& opt)
{
    const auto start = std::chrono::steady_clock::now();
    Rng rng(opt.seed);
    Counter interval{"consensus inside layer interval"};
    Counter lower{"merged slem >= 1/(N-1)"};
    Counter upper{"merged slem <= max layer slem (matched degrees)"};
    Counter rate{"slem(B A^k) <= rho*, k = 0..5"};
    Counter decay{"pi-norm decay envelope"};
    Counter decay_max{"max-norm envelope with 1/sqrt(pi_min)"};

    for (std::size_t inst = 0; inst < opt.instances; ++inst) {
        const std::size_t n = opt.n_min + static_cast<std::size_t>(rng.below(opt.n_max - opt.n_min + 1));
        const LayerGraph l1 = random_primitive_layer(n, rng);
        const LayerGraph l2 = random_primitive_layer(n, rng);
        const LayerGraph l2m = degree_preserving_variant(l1, rng, 4 * n);
        const double alpha = rng.uniform(0.05, 0.95);
        const Vector x0 = random_opinions(n, rng);
        const std::string tag = "instance " + std::to_string(inst) + " (N=" + std::to_string(n) + ")";

        const MergedModel mixed(l1, l2, alpha);
        const ConsensusInterval iv = consensus_interval(mixed, x0);
        const double xm = merged_consensus(mixed, x0);
        interval.add(iv.contains(xm, 1e-12), tag + ": " + num(xm));

        const MergedBoundsReport rb = slem_bounds(mixed);
        lower.add(rb.lower_holds, tag + ": " + num(rb.slem_c));
        const MergedModel matched(l1, l2m, alpha);
        const MergedBoundsReport rm = slem_bounds(matched);
        lower.add(rm.lower_holds, tag + " matched: " + num(rm.slem_c));
        upper.add(rm.degrees_matched && rm.upper_holds,
                  tag + ": " + num(rm.slem_c) + " > " + num(rm.upper_bound));

        for (std::uint64_t k = 0; k <= 5; ++k) {
            const SwitchingModel sw(l1, l2, k);
            const double s = slem(sw.cycle());
            const double bound = rho_star(sw);
            rate.add(s <= bound + 1e-9, tag + " k=" + std::to_string(k) + ": " + num(s) + " > " + num(bound));
        }

        const StationaryDistribution pi = stationary_from_degrees(l1);
        SimulationOptions so;
        so.t_max = 20000;
        so.consensus_target = consensus_value(pi, x0);
        so.norm_weights = pi;
        const OpinionTrajectory tr = simulate(transition_matrix(l1), x0, so);
        const double rho = slem_reversible(l1).slem;
        const DecayCheck d = decay_check(tr, rho);
        decay.add(d.passed, tag + ": margin " + num(d.margin));
        decay_max.add(d.max_passed, tag + ": margin " + num(d.max_margin));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {interval.result(), lower.result(), upper.result(), rate.result(), decay.result(), decay_max.result(),
            {"runtime under 60 s", secs < 60.0, num(secs) + " s"}};
}

std::vector<CheckResult> check_stationary_shift(std::size_t pairs, std::uint64_t seed)
{
    std::vector<CheckResult> out;
    Rng rng(seed);
    Counter exact{"predicted shift equals solved shift within 1e-9"};
    double worst = 0.0;
    for (std::size_t p = 0; p < pairs; ++p) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(9));
        const TransitionMatrix a = random_primitive_stochastic(n, rng);
        const TransitionMatrix b = random_primitive_stochastic(n, rng);
        const PerturbationReport r = stationary_shift(a, b);
        const double err = max_abs_diff(r.delta_predicted, r.delta_actual);
        worst = std::max(worst, err);
        exact.add(err <= 1e-9, "pair " + std::to_string(p) + ": " + num(err));
    }
    CheckResult c = exact.result();
    c.detail += "; worst " + num(worst);
    out.push_back(c);

    const auto p = TransitionMatrix::from_matrix(Matrix{{0.5, 0.5}, {0.5, 0.5}});
    const auto pt = TransitionMatrix::from_matrix(Matrix{{0.6, 0.4}, {0.5, 0.5}});
    const PerturbationReport r = stationary_shift(p, pt);
    const Vector want{1.0 / 18, -1.0 / 18};
    out.push_back(vector_within("2-state predicted shift (1/18, -1/18)", r.delta_predicted, want, 1e-12));
    out.push_back(vector_within("2-state solved shift (1/18, -1/18)", r.delta_actual, want, 1e-12));
    out.push_back(within("2-state ratio 5/9", shift_bound_check(p, pt), 5.0 / 9.0, 1e-12));
    return out;
}

std::vector<CheckResult> check_stability_scalings()
{
    std::vector<CheckResult> out;
    {
        const auto [l1, l2] = fixtures::noninterpolating_pair();
        const Vector x0{1, 0, 0};
        const std::vector<double> alphas{0.9, 0.99, 0.999};
        const AlphaStabilityReport r = alpha_stability_sweep(l1, l2, x0, alphas);
        out.push_back({"alpha family: slope in (1 - alpha) is 1 +- 0.1", in_band(r.loglog_slope, 1.0, 0.1),
                       "slope " + num(r.loglog_slope)});
        out.push_back({"alpha family: deviations within the closed-form constant", r.within_bound,
                       "fitted " + num(r.fitted_constant) + " bound " + num(r.bound_constant)});
    }

    const LayerGraph base = fixtures::degree_mismatch_pair().layer1;
    const Vector x0{1.0, 0.2, 0.9, 0.0, 0.35, 0.6};
    std::vector<LayerGraph> family;
    for (double eps : {1e-2, 1e-3, 1e-4}) family.push_back(reweight_edge(base, 0, 1, 1.0 + eps));
    {
        const PerturbationFamilyReport r = merged_perturbation_family(base, family, 0.5, x0);
        out.push_back({"merged perturbation family: slope 1 +- 0.1", r.armed && in_band(r.loglog_slope, 1.0, 0.1),
                       "slope " + num(r.loglog_slope) + (r.armed ? "" : " (outside small-perturbation regime)")});
        out.push_back({"merged perturbation family: proportional within factor 2", r.proportional,
                       "constant " + num(r.fitted_constant)});
    }
    {
        const auto [l1, l2] = fixtures::noninterpolating_pair();
        const Vector y0{1, 0, 0};
        const std::vector<std::uint64_t> ks{1, 2, 3, 4, 5, 6, 7, 8};
        const KStabilityReport r = k_stability_sweep(l1, l2, y0, ks);
        out.push_back({"period family: fitted ratio <= 1.05 rho2(A)",
                       std::isfinite(r.fitted_ratio) && r.fitted_ratio <= 1.05 * r.rho_a,
                       "ratio " + num(r.fitted_ratio) + " rho2(A) " + num(r.rho_a)});
        out.push_back({"period family: deviations under 2 c rho2(A)^k", r.within_envelope && r.excluded.empty(),
                       "c " + num(r.envelope_constant)});
    }
    {
        const PerturbationFamilyReport r = switching_perturbation_family(base, family, 2, x0);
        out.push_back({"switching perturbation family: slope 1 +- 0.1",
                       r.armed && in_band(r.loglog_slope, 1.0, 0.1),
                       "slope " + num(r.loglog_slope) + (r.armed ? "" : " (outside small-perturbation regime)")});
        out.push_back({"switching perturbation family: proportional within factor 2", r.proportional,
                       "constant " + num(r.fitted_constant)});
    }
    return out;
}

SuiteReport run_suite(const std::string& name)
{
    SuiteReport rep{name, {}};
    auto append = [&rep](const std::string& prefix, std::vector<CheckResult> checks) {
        for (auto& c : checks) {
            c.name = prefix + ": " + c.name;
            rep.checks.push_back(std::move(c));
        }
    };
    if (name == "examples") {
        append("oscillating pair", check_oscillating_pair());
        append("degree-mismatch pair", check_degree_mismatch_pair());
        append("circulant pair", check_circulant_pair());
        append("non-interpolating pair", check_noninterpolating_pair());
    } else if (name == "bounds") {
        append("random bounds", check_random_bounds());
    } else if (name == "perturbation") {
        append("stationary shift", check_stationary_shift());
        append("stability scalings", check_stability_scalings());
    } else {
        throw InvalidArgument("unknown suite \"" + name + "\" (expected examples, bounds or perturbation)");
    }
    return rep;
}

}  // namespace mplex
