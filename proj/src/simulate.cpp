#include "mplex/simlab.hpp"

#include "mplex/error.hpp"
#include "mplex/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace mplex {
namespace {

void record_errors(OpinionTrajectory& tr, const Vector& x, const SimulationOptions& opt)
{
    if (!opt.consensus_target) return;
    Vector e(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) e[i] = x[i] - *opt.consensus_target;
    tr.errors_max.push_back(max_norm(e));
    tr.errors_pi.push_back(pi_norm(e, *opt.norm_weights));
}

}  // namespace

OpinionTrajectory simulate(const Schedule& schedule, std::span<const double> x0, const SimulationOptions& opt)
{
    require_opinions(x0, "simulate");
    if (opt.period == 0) throw InvalidArgument("simulate: period must be positive");
    if (!(opt.tol > 0.0)) throw InvalidArgument("simulate: tol must be positive");
    if (opt.consensus_target.has_value() != opt.norm_weights.has_value())
        throw InvalidArgument("simulate: consensus_target and norm_weights go together");
    if (opt.norm_weights && opt.norm_weights->size() != x0.size())
        throw InvalidArgument("simulate: norm weights have the wrong length");

    OpinionTrajectory tr;
    tr.initial.assign(x0.begin(), x0.end());
    tr.consensus_target = opt.consensus_target;
    tr.period = opt.period;
    if (opt.norm_weights) tr.pi_min = opt.norm_weights->min();
    const auto [lo_it, hi_it] = std::minmax_element(x0.begin(), x0.end());
    const double lo = x0.empty() ? 0.0 : *lo_it;
    const double hi = x0.empty() ? 0.0 : *hi_it;

    Vector x = tr.initial;
    record_errors(tr, x, opt);
    if (opt.keep_states) tr.states.push_back(x);
    if (lo == hi) {
        tr.converged = true;
        tr.final_state = x;
        return tr;
    }

    const std::size_t ring = static_cast<std::size_t>(2 * opt.period + 1);
    std::deque<Vector> recent{x};
    std::uint64_t quiet = 0;
    for (std::uint64_t t = 1; t <= opt.t_max; ++t) {
        Vector next = schedule(t).matrix() * x;
        for (double v : next)
            if (v < lo - 1e-12 || v > hi + 1e-12) tr.convex_closure = false;
        quiet = max_abs_diff(next, x) < opt.tol ? quiet + 1 : 0;
        x = std::move(next);
        tr.steps = t;
        record_errors(tr, x, opt);
        if (opt.keep_states) tr.states.push_back(x);
        recent.push_back(x);
        if (recent.size() > ring) recent.pop_front();
        if (quiet >= opt.period) {
            tr.converged = true;
            break;
        }
    }
    if (!tr.converged && recent.size() == ring) {
        const Vector& now = recent.back();
        const Vector& one_back = recent[recent.size() - 1 - opt.period];
        const Vector& two_back = recent.front();
        tr.oscillation = max_abs_diff(now, two_back) < 1e-9 && max_abs_diff(now, one_back) > 1e-6;
    }
    tr.final_state = std::move(x);
    return tr;
}

OpinionTrajectory simulate(const TransitionMatrix& m, std::span<const double> x0, const SimulationOptions& options)
{
    return simulate([&m](std::uint64_t) -> const TransitionMatrix& { return m; }, x0, options);
}

DecayCheck decay_check(const OpinionTrajectory& tr, double rho)
{
    if (!tr.consensus_target || tr.errors_pi.empty()) throw InvalidArgument("decay_check: trajectory has no consensus target");
    if (!(rho > 0.0 && rho < 1.0)) throw InvalidArgument("decay_check: rho must lie in (0, 1)");
    if (!(tr.pi_min > 0.0)) throw InvalidArgument("decay_check: pi_min must be positive");
    DecayCheck out;
    const double e0 = tr.errors_pi.front();
    const double c = 1.0 / std::sqrt(tr.pi_min);
    out.margin = out.max_margin = std::numeric_limits<double>::infinity();
    double rt = 1.0;
    for (std::size_t t = 0; t < tr.errors_pi.size(); ++t) {
        const double bound = rt * e0;
        const double m1 = bound + 1e-12 - tr.errors_pi[t];
        const double m2 = c * bound + 1e-12 - tr.errors_max[t];
        out.margin = std::min(out.margin, m1);
        out.max_margin = std::min(out.max_margin, m2);
        if ((m1 < 0.0 || m2 < 0.0) && out.passed && out.max_passed) out.first_violation = static_cast<std::uint64_t>(t);
        if (m1 < 0.0) out.passed = false;
        if (m2 < 0.0) out.max_passed = false;
        rt *= rho;
    }
    return out;
}

double error_floor(double e0) { return std::max(1e-10 * e0, 1e-13); }

std::optional<double> empirical_rate(std::span<const double> errors, std::uint64_t stride)
{
    if (errors.empty() || stride == 0) return std::nullopt;
    const double floor = error_floor(errors.front());
    std::vector<double> sampled;
    for (std::size_t i = 0; i < errors.size(); i += stride) {
        if (!(errors[i] > floor)) break;
        sampled.push_back(errors[i]);
    }
    if (sampled.size() < 5) return std::nullopt;
    return fit_rate(sampled);
}

}  // namespace mplex
