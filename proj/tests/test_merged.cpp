#include <doctest.h>

#include "mplex/fixtures.hpp"
#include "mplex/instances.hpp"
#include "mplex/merged.hpp"

#include <cmath>

using namespace mplex;

namespace {

// |E|-weighted combination of the single-layer consensuses.
double closed_form(const LayerGraph& a, const LayerGraph& b, double alpha, const Vector& x0)
{
    auto mean = [&x0](const LayerGraph& g) { return dot(g.degrees(), x0) / (2.0 * g.total_edge_weight()); };
    const double e1 = a.total_edge_weight(), e2 = b.total_edge_weight();
    return (alpha * e1 * mean(a) + (1 - alpha) * e2 * mean(b)) / (alpha * e1 + (1 - alpha) * e2);
}

}  // namespace

TEST_CASE("merged model construction")
{
    const auto [l1, l2] = fixtures::noninterpolating_pair();
    const MergedModel m(l1, l2, 0.5);
    CHECK(m.merged_layer().weight(0, 1) == 1.25);
    CHECK(m.transition().provenance() == Provenance::merged);
    CHECK_THROWS_AS(MergedModel(l1, l2, 1.5), InvalidArgument);
    CHECK_THROWS_AS(MergedModel(l1, l2, -0.1), InvalidArgument);
    const LayerGraph small = LayerGraph::from_weights(Matrix{{0, 1}, {1, 0}});
    CHECK_THROWS_AS(MergedModel(l1, small, 0.5), InvalidArgument);

    const LayerGraph path = build_layer(3, {{0, 1, 1.0}});
    CHECK_THROWS_AS(MergedModel(path, path, 0.5), IsolatedNode);
}

TEST_CASE("merged consensus of the 3-node fixture is 4/11")
{
    const auto [l1, l2] = fixtures::noninterpolating_pair();
    const Vector x0{1, 0, 0};
    const MergedModel m(l1, l2, 0.5);
    CHECK(merged_consensus(m, x0) == doctest::Approx(4.0 / 11.0).epsilon(1e-14));
    CHECK(max_abs_diff(merged_stationary(m).values(), Vector{4.0 / 11, 4.0 / 11, 3.0 / 11}) < 1e-15);
    CHECK(merged_consensus(m, x0) == doctest::Approx(closed_form(l1, l2, 0.5, x0)).epsilon(1e-14));
}

TEST_CASE("merged consensus: degree form, left Perron vector and closed form agree")
{
    Rng rng(31);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng.below(12));
        const LayerGraph a = random_primitive_layer(n, rng), b = random_primitive_layer(n, rng);
        const double alpha = rng.uniform();
        const Vector x0 = random_opinions(n, rng);
        const MergedModel m(a, b, alpha);
        const double xm = merged_consensus(m, x0);
        CHECK(std::fabs(xm - consensus_value(stationary_general(m.transition()), x0)) < 1e-11);
        CHECK(std::fabs(xm - closed_form(a, b, alpha, x0)) < 1e-12);
        const ConsensusInterval iv = consensus_interval(m, x0);
        CHECK(iv.contains(xm, 1e-12));
    }
}

TEST_CASE("alpha endpoints reduce to single layers")
{
    const auto [l1, l2] = fixtures::degree_mismatch_pair();
    const Vector x0{0.1, 0.9, 0.3, 0.7, 0.5, 0.2};
    const double x1 = consensus_value(stationary_from_degrees(l1), x0);
    const double x2 = consensus_value(stationary_from_degrees(l2), x0);
    CHECK(merged_consensus(MergedModel(l1, l2, 1.0), x0) == doctest::Approx(x1).epsilon(1e-14));
    CHECK(merged_consensus(MergedModel(l1, l2, 0.0), x0) == doctest::Approx(x2).epsilon(1e-14));
}

TEST_CASE("one primitive layer guarantees a primitive merge")
{
    const LayerGraph bip = generate(GeneratorSpec{Circulant{{1, 5}, 1.0}, 6, 0});
    const LayerGraph tri = generate(GeneratorSpec{Circulant{{1, 2, 4, 5}, 1.0}, 6, 0});
    const MergedModel m(bip, tri, 0.9);
    const MergedPrimitivity p = primitivity_guarantee(m);
    REQUIRE(p.layer1.has_value());
    CHECK_FALSE(p.layer1->primitive);
    CHECK(p.layer2->primitive);
    CHECK(p.guaranteed);
    CHECK(p.merged.primitive);

    const MergedModel edge(bip, tri, 1.0);
    CHECK_FALSE(primitivity_guarantee(edge).guaranteed);
    CHECK_THROWS_AS(merged_consensus(edge, Vector(6, 0.5)), NotPrimitive);
    CHECK_THROWS_AS(consensus_interval(MergedModel(bip, tri, 0.5), Vector(6, 0.5)), NotPrimitive);

    const LayerGraph sparse = build_layer(6, {{0, 1, 1.0}, {2, 3, 1.0}});
    const MergedModel m2(sparse, tri, 0.5);
    CHECK_FALSE(primitivity_guarantee(m2).layer1.has_value());
}

TEST_CASE("spectral bounds")
{
    Rng rng(32);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.below(12));
        const LayerGraph a = random_primitive_layer(n, rng);
        const LayerGraph b = degree_preserving_variant(a, rng, 5 * n);
        CHECK(degrees_matched(a, b));
        const MergedBoundsReport r = slem_bounds(MergedModel(a, b, rng.uniform()));
        CHECK(r.degrees_matched);
        CHECK(r.lower_holds);
        CHECK(r.upper_holds);
        CHECK(r.lower_bound == doctest::Approx(1.0 / static_cast<double>(n - 1)));
    }
    const auto [l1, l2] = fixtures::degree_mismatch_pair();
    const MergedBoundsReport r = slem_bounds(MergedModel(l1, l2, 0.5));
    CHECK_FALSE(r.degrees_matched);
    CHECK_FALSE(r.upper_holds);
    CHECK(r.slem_c > r.upper_bound);
}

TEST_CASE("alpha sweep stays within the closed-form constant")
{
    const auto [l1, l2] = fixtures::degree_mismatch_pair();
    const Vector x0{0.1, 0.9, 0.3, 0.7, 0.5, 0.2};
    const std::vector<double> alphas{0.5, 0.9, 0.99, 0.999, 1.0};
    const AlphaStabilityReport r = alpha_stability_sweep(l1, l2, x0, alphas);
    CHECK(r.within_bound);
    CHECK(r.deviations.back() < 1e-15);
    CHECK(r.fitted_constant <= r.bound_constant);
    CHECK(std::fabs(r.loglog_slope - 1.0) < 0.1);

    const AlphaStabilityReport flat = alpha_stability_sweep(l1, l2, Vector(6, 0.4), alphas);
    for (double d : flat.deviations) CHECK(d < 1e-15);
}

TEST_CASE("perturbation families")
{
    const auto [l1, l2] = fixtures::degree_mismatch_pair();
    const Vector x0{0.1, 0.9, 0.3, 0.7, 0.5, 0.2};
    const PerturbationPoint same = merged_perturbation_check(l1, l1, 0.5, x0);
    CHECK(same.matrix_difference == 0.0);
    CHECK(same.consensus_difference < 1e-15);

    std::vector<LayerGraph> fam;
    for (double eps : {1e-2, 1e-3, 1e-4}) fam.push_back(reweight_edge(l1, 2, 3, 1.0 + eps));
    const PerturbationFamilyReport r = merged_perturbation_family(l1, fam, 0.5, x0);
    CHECK(r.armed);
    CHECK(r.proportional);
    CHECK(std::fabs(r.loglog_slope - 1.0) < 0.1);

    const PerturbationFamilyReport flat = merged_perturbation_family(l1, fam, 0.5, Vector(6, 0.3));
    for (const auto& p : flat.points) CHECK(p.consensus_difference < 1e-15);

    std::vector<LayerGraph> big{fam[0], l2};
    CHECK_FALSE(merged_perturbation_family(l1, big, 0.5, x0).armed);
}
