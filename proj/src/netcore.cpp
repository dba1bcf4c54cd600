#include "mplex/netcore.hpp"

#include "mplex/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mplex {

LayerGraph::LayerGraph(Matrix weights) : weights_(std::move(weights)), degrees_(weights_.rows(), 0.0)
{
    double total = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        double d = 0.0;
        for (double w : weights_.row(i)) d += w;
        degrees_[i] = d;
        total += d;
    }
    total_edge_weight_ = 0.5 * total;
}

LayerGraph LayerGraph::from_weights(Matrix weights)
{
    if (!weights.is_square()) throw InvalidArgument("layer: weight matrix is not square");
    const std::size_t n = weights.rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (weights(i, i) != 0.0) throw InvalidArgument("layer: self-loop at node " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            const double w = weights(i, j);
            if (!(w >= 0.0) || !std::isfinite(w))
                throw InvalidArgument("layer: invalid weight at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            if (w != weights(j, i))
                throw InvalidArgument("layer: weights not symmetric at (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ")");
        }
    }
    return LayerGraph(std::move(weights));
}

std::vector<std::size_t> LayerGraph::neighbors(std::size_t i) const
{
    std::vector<std::size_t> out;
    const auto r = weights_.row(i);
    for (std::size_t j = 0; j < r.size(); ++j)
        if (r[j] > 0.0) out.push_back(j);
    return out;
}

std::vector<Edge> LayerGraph::edges() const
{
    std::vector<Edge> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (weights_(i, j) > 0.0) out.push_back({i, j, weights_(i, j)});
    return out;
}

std::size_t LayerGraph::edge_count() const
{
    std::size_t c = 0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) c += weights_(i, j) > 0.0 ? 1 : 0;
    return c;
}

bool LayerGraph::has_isolated_node() const noexcept
{
    return std::any_of(degrees_.begin(), degrees_.end(), [](double d) { return d <= 0.0; });
}

LayerGraph build_layer(std::size_t n, const std::vector<Edge>& edges)
{
    Matrix w(n, n);
    for (const Edge& e : edges) {
        if (e.i >= n || e.j >= n)
            throw InvalidArgument("build_layer: edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                  ") out of range for n = " + std::to_string(n));
        if (e.i == e.j) throw InvalidArgument("build_layer: self-loop at node " + std::to_string(e.i));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw InvalidArgument("build_layer: non-positive weight on edge (" + std::to_string(e.i) + ", " +
                                  std::to_string(e.j) + ")");
        if (w(e.i, e.j) != 0.0)
            throw InvalidArgument("build_layer: duplicate edge (" + std::to_string(e.i) + ", " +
                                  std::to_string(e.j) + ")");
        w(e.i, e.j) = e.weight;
        w(e.j, e.i) = e.weight;
    }
    return LayerGraph::from_weights(std::move(w));
}

LayerGraph reweight_edge(const LayerGraph& layer, std::size_t i, std::size_t j, double factor)
{
    if (i >= layer.size() || j >= layer.size() || i == j) throw InvalidArgument("reweight_edge: bad node pair");
    if (!(factor > 0.0)) throw InvalidArgument("reweight_edge: factor must be positive");
    if (layer.weight(i, j) == 0.0) throw InvalidArgument("reweight_edge: pair is not an edge");
    Matrix w = layer.weights();
    w(i, j) *= factor;
    w(j, i) = w(i, j);
    return LayerGraph::from_weights(std::move(w));
}

LayerGraph induced_subgraph(const LayerGraph& layer, const std::vector<std::size_t>& nodes)
{
    Matrix w(nodes.size(), nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        if (nodes[a] >= layer.size()) throw InvalidArgument("induced_subgraph: node out of range");
        for (std::size_t b = 0; b < nodes.size(); ++b) w(a, b) = layer.weight(nodes[a], nodes[b]);
    }
    return LayerGraph::from_weights(std::move(w));
}

}  // namespace mplex
