#include <doctest.h>

#include "mplex/fitting.hpp"
#include "mplex/fixtures.hpp"
#include "mplex/instances.hpp"
#include "mplex/merged.hpp"
#include "mplex/simlab.hpp"
#include "mplex/spectral.hpp"
#include "mplex/switching.hpp"

#include <cmath>

using namespace mplex;

namespace {

SimulationOptions tracked(const StationaryDistribution& pi, std::span<const double> x0, std::uint64_t period = 1)
{
    SimulationOptions o;
    o.t_max = 100000;
    o.period = period;
    o.consensus_target = consensus_value(pi, x0);
    o.norm_weights = pi;
    return o;
}

}  // namespace

TEST_CASE("constant opinions are a fixpoint")
{
    const auto [l1, l2] = fixtures::noninterpolating_pair();
    const OpinionTrajectory tr = simulate(transition_matrix(l1), Vector(3, 0.25), SimulationOptions{});
    CHECK(tr.steps == 0);
    CHECK(tr.converged);
    CHECK(tr.final_state == Vector(3, 0.25));
}

TEST_CASE("merged simulation reaches 4/11")
{
    const auto [l1, l2] = fixtures::noninterpolating_pair();
    const MergedModel m(l1, l2, 0.5);
    SimulationOptions o;
    o.keep_states = true;
    const OpinionTrajectory tr = simulate(m.transition(), Vector{1, 0, 0}, o);
    REQUIRE(tr.converged);
    for (double v : tr.final_state) CHECK(std::fabs(v - 4.0 / 11.0) < 1e-8);
    CHECK(tr.states.size() == tr.steps + 1);
    CHECK(tr.convex_closure);
    // states follow x(t) = C x(t-1)
    for (std::size_t t = 1; t < tr.states.size(); ++t)
        CHECK(max_abs_diff(tr.states[t], m.transition().matrix() * tr.states[t - 1]) == 0.0);
}

TEST_CASE("switching simulation: consensus at 3/10 and the oscillating pair")
{
    {
        const auto [l1, l2] = fixtures::noninterpolating_pair();
        const SwitchingModel m(l1, l2, 1);
        const Schedule s = [&m](std::uint64_t t) -> const TransitionMatrix& { return step_matrix(m, t); };
        SimulationOptions o;
        o.period = 2;
        const OpinionTrajectory tr = simulate(s, Vector{1, 0, 0}, o);
        REQUIRE(tr.converged);
        CHECK(tr.steps % 2 == 0);
        for (double v : tr.final_state) CHECK(std::fabs(v - 0.3) < 1e-9);
    }
    {
        const auto [l1, l2] = fixtures::oscillating_pair();
        const SwitchingModel m(l1, l2, 1);
        const Schedule s = [&m](std::uint64_t t) -> const TransitionMatrix& { return step_matrix(m, t); };
        SimulationOptions o;
        o.period = 2;
        o.t_max = 5000;
        const Vector x0{0.2, 0.5, 0.5, 0.9, 0.1};
        const OpinionTrajectory tr = simulate(s, x0, o);
        CHECK_FALSE(tr.converged);
        CHECK(tr.oscillation);
        // cycle boundary state matches the even or odd limit applied to x0
        const Vector even = fixtures::oscillating_even_limit() * x0;
        const Vector odd = fixtures::oscillating_odd_limit() * x0;
        CHECK(std::min(max_abs_diff(tr.final_state, even), max_abs_diff(tr.final_state, odd)) < 1e-9);
    }
}

TEST_CASE("triangle walk decays at exactly rho = 1/2")
{
    const auto [l1, l2] = fixtures::noninterpolating_pair();
    const auto a = transition_matrix(l1);
    const auto pi = stationary_from_degrees(l1);
    const Vector x0{1, 0, 0.5};  // mean plus a second eigenvector
    const OpinionTrajectory tr = simulate(a, x0, tracked(pi, x0));
    for (std::size_t t = 0; t < 20; ++t)
        CHECK(tr.errors_pi[t] == doctest::Approx(tr.errors_pi[0] * std::pow(0.5, static_cast<double>(t))).epsilon(1e-9));
    const DecayCheck ok = decay_check(tr, 0.5);
    CHECK(ok.passed);
    CHECK(ok.max_passed);
    const DecayCheck bad = decay_check(tr, 0.45);
    CHECK_FALSE(bad.passed);
    CHECK(bad.first_violation == 1);
    CHECK_THROWS_AS(decay_check(tr, 1.0), InvalidArgument);
    CHECK_THROWS_AS(decay_check(simulate(a, x0, SimulationOptions{}), 0.5), InvalidArgument);
}

TEST_CASE("decay envelope holds on random layers")
{
    Rng rng(61);
    for (int i = 0; i < 30; ++i) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng.below(20));
        const LayerGraph g = random_primitive_layer(n, rng);
        const Vector x0 = random_opinions(n, rng);
        const auto pi = stationary_from_degrees(g);
        const OpinionTrajectory tr = simulate(transition_matrix(g), x0, tracked(pi, x0));
        CHECK(tr.converged);
        CHECK(tr.convex_closure);
        const double r = slem_reversible(g).slem;
        if (r <= 0.0 || r >= 1.0) continue;
        const DecayCheck d = decay_check(tr, r);
        CHECK(d.passed);
        CHECK(d.max_passed);
    }
}

TEST_CASE("fitted rates")
{
    std::vector<double> geo;
    for (int t = 0; t < 30; ++t) geo.push_back(5.0 * std::pow(0.3, t));
    CHECK(fit_rate(geo) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(fit_rate(std::span<const double>(geo).first(4)), InvalidArgument);
    CHECK(empirical_rate(geo).has_value());
    CHECK(*empirical_rate(geo) == doctest::Approx(0.3).epsilon(1e-12));
    // the floor truncates: 0.3^t falls under 1e-10 at t = 20
    std::vector<double> noisy = geo;
    for (std::size_t t = 20; t < noisy.size(); ++t) noisy[t] = 1e-20;
    CHECK(*empirical_rate(noisy) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_FALSE(empirical_rate(std::span<const double>(geo).first(4)).has_value());
    CHECK(*empirical_rate(geo, 2) == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(error_floor(1.0) == 1e-10);
    CHECK(error_floor(1e-5) == 1e-13);
}

TEST_CASE("trajectory rates match the second eigenvalue")
{
    {
        const LayerGraph g = generate(GeneratorSpec{Circulant{{1, 4}, 1.0}, 5, 0});
        const Vector x0{0.9, 0.1, 0.4, 0.7, 0.3};
        const auto pi = stationary_from_degrees(g);
        const OpinionTrajectory tr = simulate(transition_matrix(g), x0, tracked(pi, x0));
        const auto rate = empirical_rate(tr.errors_pi);
        REQUIRE(rate.has_value());
        CHECK(std::fabs(*rate - std::cos(M_PI / 5)) < 0.02);
    }
    {
        const auto [l1, l2] = fixtures::noninterpolating_pair();
        const SwitchingModel m(l1, l2, 1);
        const Schedule s = [&m](std::uint64_t t) -> const TransitionMatrix& { return step_matrix(m, t); };
        const Vector x0{1, 0, 0};
        const auto pi = switching_stationary(m);
        const OpinionTrajectory tr = simulate(s, x0, tracked(pi, x0, 2));
        const auto rate = empirical_rate(tr.errors_pi, 2);
        REQUIRE(rate.has_value());
        CHECK(std::fabs(*rate - 1.0 / 3.0) < 0.03);
    }
}

TEST_CASE("least squares helpers")
{
    const std::vector<double> x{0, 1, 2, 3, 4};
    std::vector<double> y;
    for (double v : x) y.push_back(2 * v + 1);
    const LinearFit f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-14));

    const std::vector<double> px{0.0, 1, 2, 4, 8};
    std::vector<double> py;
    for (double v : px) py.push_back(3 * v * v);
    CHECK(loglog_slope(px, py) == doctest::Approx(2.0).epsilon(1e-12));
    const std::vector<double> one{0.0, 1.0}, zero{0.0, 5.0};
    CHECK(std::isnan(loglog_slope(one, zero)));
}
