#include "mplex/error.hpp"
#include "mplex/netcore.hpp"
#include "mplex/random.hpp"

#include <algorithm>
#include <sstream>

namespace mplex {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

LayerGraph erdos_renyi(std::size_t n, double p, Rng& rng)
{
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < p) w(i, j) = w(j, i) = 1.0;
    return LayerGraph::from_weights(std::move(w));
}

// Seed clique on m + 1 nodes, then each new node attaches to m distinct
// existing nodes drawn proportionally to degree.
LayerGraph barabasi_albert(std::size_t n, std::size_t m, Rng& rng)
{
    Matrix w(n, n);
    std::vector<std::size_t> endpoints;  // node repeated once per incident edge
    endpoints.reserve(2 * n * m);
    const std::size_t seed_nodes = std::min(n, m + 1);
    for (std::size_t i = 0; i < seed_nodes; ++i)
        for (std::size_t j = i + 1; j < seed_nodes; ++j) {
            w(i, j) = w(j, i) = 1.0;
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    std::vector<std::size_t> targets;
    for (std::size_t v = seed_nodes; v < n; ++v) {
        targets.clear();
        while (targets.size() < m) {
            const std::size_t t = endpoints[rng.below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (std::size_t t : targets) {
            w(v, t) = w(t, v) = 1.0;
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    return LayerGraph::from_weights(std::move(w));
}

// Pairing model with incremental rejection (Steger-Wormald style): draw random
// stub pairs, reject loops/multi-edges, restart when the remaining stubs admit
// no legal pair.
LayerGraph k_regular(std::size_t n, std::size_t k, Rng& rng)
{
    constexpr int max_restarts = 10000;
    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        Matrix w(n, n);
        std::vector<std::size_t> stubs;
        stubs.reserve(n * k);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t c = 0; c < k; ++c) stubs.push_back(v);

        bool stuck = false;
        while (!stubs.empty() && !stuck) {
            bool paired = false;
            for (int tries = 0; tries < 64 && !paired; ++tries) {
                const std::size_t a = rng.below(stubs.size());
                const std::size_t b = rng.below(stubs.size());
                const std::size_t u = stubs[a];
                const std::size_t v = stubs[b];
                if (a == b || u == v || w(u, v) != 0.0) continue;
                w(u, v) = w(v, u) = 1.0;
                const std::size_t hi = std::max(a, b);
                const std::size_t lo = std::min(a, b);
                stubs[hi] = stubs.back();
                stubs.pop_back();
                stubs[lo] = stubs.back();
                stubs.pop_back();
                paired = true;
            }
            if (paired) continue;
            // Exhaustive check for any legal pair before giving up on this attempt.
            stuck = true;
            for (std::size_t a = 0; a < stubs.size() && stuck; ++a)
                for (std::size_t b = a + 1; b < stubs.size(); ++b)
                    if (stubs[a] != stubs[b] && w(stubs[a], stubs[b]) == 0.0) {
                        stuck = false;
                        break;
                    }
        }
        if (!stuck) return LayerGraph::from_weights(std::move(w));
    }
    throw Error("k-regular generator: too many restarts");
}

LayerGraph circulant(std::size_t n, const std::vector<std::size_t>& offsets, double weight)
{
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t o : offsets) w(i, (i + o) % n) = weight;
    return LayerGraph::from_weights(std::move(w));
}

}  // namespace

void validate(const GeneratorSpec& spec)
{
    const std::size_t n = spec.n;
    if (n < 2) throw InvalidArgument("generator: need at least 2 nodes");
    std::visit(Overloaded{
                   [](const ErdosRenyi& g) {
                       if (!(g.p > 0.0 && g.p <= 1.0)) throw InvalidArgument("erdos-renyi: p must lie in (0, 1]");
                   },
                   [n](const BarabasiAlbert& g) {
                       if (g.m < 1 || g.m >= n) throw InvalidArgument("barabasi-albert: need 1 <= m < n");
                   },
                   [n](const KRegular& g) {
                       if (g.k >= n) throw InvalidArgument("k-regular: need k < n");
                       if ((g.k * n) % 2 != 0) throw InvalidArgument("k-regular: k * n must be even");
                   },
                   [n](const Circulant& g) {
                       if (!(g.weight > 0.0)) throw InvalidArgument("circulant: weight must be positive");
                       if (g.offsets.empty()) throw InvalidArgument("circulant: empty offset set");
                       for (std::size_t o : g.offsets) {
                           if (o % n == 0) throw InvalidArgument("circulant: offsets must be nonzero mod n");
                           const std::size_t mirror = (n - o % n) % n;
                           const bool closed = std::any_of(g.offsets.begin(), g.offsets.end(),
                                                           [&](std::size_t q) { return q % n == mirror; });
                           if (!closed)
                               throw InvalidArgument("circulant: offset set must be closed under negation mod n");
                       }
                   },
               },
               spec.kind);
}

LayerGraph generate(const GeneratorSpec& spec)
{
    validate(spec);
    Rng rng(spec.seed);
    return std::visit(Overloaded{
                          [&](const ErdosRenyi& g) { return erdos_renyi(spec.n, g.p, rng); },
                          [&](const BarabasiAlbert& g) { return barabasi_albert(spec.n, g.m, rng); },
                          [&](const KRegular& g) { return k_regular(spec.n, g.k, rng); },
                          [&](const Circulant& g) { return circulant(spec.n, g.offsets, g.weight); },
                      },
                      spec.kind);
}

std::string describe(const GeneratorSpec& spec)
{
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](const ErdosRenyi& g) { os << "erdos-renyi(p=" << g.p << ")"; },
                   [&](const BarabasiAlbert& g) { os << "barabasi-albert(m=" << g.m << ")"; },
                   [&](const KRegular& g) { os << "k-regular(k=" << g.k << ")"; },
                   [&](const Circulant& g) {
                       os << "circulant(offsets=";
                       for (std::size_t i = 0; i < g.offsets.size(); ++i) os << (i ? "," : "") << g.offsets[i];
                       os << ", weight=" << g.weight << ")";
                   },
               },
               spec.kind);
    os << " n=" << spec.n << " seed=" << spec.seed;
    return os.str();
}

}  // namespace mplex
