#include "mplex/instances.hpp"

#include "mplex/error.hpp"

#include <algorithm>

namespace mplex {

LayerGraph random_primitive_layer(std::size_t n, Rng& rng)
{
    if (n < 3) throw InvalidArgument("random_primitive_layer: need n >= 3");
    Matrix w(n, n);
    auto set = [&w](std::size_t i, std::size_t j, double v) { w(i, j) = w(j, i) = v; };
    for (std::size_t i = 1; i < n; ++i) set(i, static_cast<std::size_t>(rng.below(i)), rng.uniform(0.5, 2.0));
    set(0, 1, rng.uniform(0.5, 2.0));
    set(1, 2, rng.uniform(0.5, 2.0));
    set(0, 2, rng.uniform(0.5, 2.0));
    const double p = rng.uniform(0.1, 0.5);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (w(i, j) == 0.0 && rng.uniform() < p) set(i, j, rng.uniform(0.5, 2.0));
    return LayerGraph::from_weights(std::move(w));
}

LayerGraph degree_preserving_variant(const LayerGraph& layer, Rng& rng, std::size_t moves)
{
    const std::size_t n = layer.size();
    if (n < 4) throw InvalidArgument("degree_preserving_variant: need n >= 4");
    Matrix w = layer.weights();
    for (std::size_t m = 0; m < moves; ++m) {
        std::size_t v[4];
        for (int a = 0; a < 4; ++a) {
            bool fresh;
            do {
                v[a] = static_cast<std::size_t>(rng.below(n));
                fresh = std::none_of(v, v + a, [&](std::size_t u) { return u == v[a]; });
            } while (!fresh);
        }
        const auto [i, j, k, l] = v;
        const double room = std::min(w(j, k), w(l, i));
        if (room <= 0.0) continue;
        const double d = 0.9 * rng.uniform() * room;
        w(i, j) += d;
        w(j, i) = w(i, j);
        w(k, l) += d;
        w(l, k) = w(k, l);
        w(j, k) -= d;
        w(k, j) = w(j, k);
        w(l, i) -= d;
        w(i, l) = w(l, i);
    }
    return LayerGraph::from_weights(std::move(w));
}

TransitionMatrix random_primitive_stochastic(std::size_t n, Rng& rng)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const bool forced = i == j || j == (i + 1) % n;
            if (forced || rng.uniform() >= 0.3) m(i, j) = rng.uniform(0.05, 1.0);
        }
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j);
        for (std::size_t j = 0; j < n; ++j) m(i, j) /= s;
    }
    return TransitionMatrix::from_matrix(std::move(m));
}

Vector random_opinions(std::size_t n, Rng& rng)
{
    Vector x(n);
    for (double& v : x) v = rng.uniform();
    return x;
}

}  // namespace mplex
