#pragma once

// Weighted undirected layers over a shared node set, plus generators and
// edge-list loading.

#include "mplex/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mplex {

struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;
    double weight = 1.0;
};

/// Undirected, loop-free, nonnegatively weighted graph. Immutable once built:
/// the weight matrix is exactly symmetric with a zero diagonal.
class LayerGraph {
public:
    /// Validates symmetry (exact), zero diagonal and nonnegativity.
    static LayerGraph from_weights(Matrix weights);

    std::size_t size() const noexcept { return weights_.rows(); }
    const Matrix& weights() const noexcept { return weights_; }
    double weight(std::size_t i, std::size_t j) const noexcept { return weights_(i, j); }
    const Vector& degrees() const noexcept { return degrees_; }
    double degree(std::size_t i) const noexcept { return degrees_[i]; }
    /// |E| = half the total degree.
    double total_edge_weight() const noexcept { return total_edge_weight_; }

    std::vector<std::size_t> neighbors(std::size_t i) const;
    /// Edges with i < j.
    std::vector<Edge> edges() const;
    std::size_t edge_count() const;
    bool has_isolated_node() const noexcept;

private:
    explicit LayerGraph(Matrix weights);

    Matrix weights_;
    Vector degrees_;
    double total_edge_weight_ = 0.0;
};

/// Builds a layer from an edge list. Rejects self-loops, duplicate unordered
/// pairs, out-of-range nodes and non-positive weights.
LayerGraph build_layer(std::size_t n, const std::vector<Edge>& edges);

/// Returns a copy of `layer` with the weight of edge {i, j} multiplied by `factor` (> 0).
LayerGraph reweight_edge(const LayerGraph& layer, std::size_t i, std::size_t j, double factor);

/// Restriction of the layer to `nodes` (relabelled 0..nodes.size()-1 in the given order).
LayerGraph induced_subgraph(const LayerGraph& layer, const std::vector<std::size_t>& nodes);

// ---------------------------------------------------------------------------
// Generators

struct ErdosRenyi {
    double p = 0.0;
};
struct BarabasiAlbert {
    std::size_t m = 1;
};
struct KRegular {
    std::size_t k = 0;
};
struct Circulant {
    std::vector<std::size_t> offsets;
    double weight = 1.0;
};

struct GeneratorSpec {
    std::variant<ErdosRenyi, BarabasiAlbert, KRegular, Circulant> kind;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

/// Throws InvalidArgument with a reason when the parameters are out of range.
void validate(const GeneratorSpec& spec);

/// Deterministic in (spec, seed). Connectivity is not guaranteed.
LayerGraph generate(const GeneratorSpec& spec);

std::string describe(const GeneratorSpec& spec);

// ---------------------------------------------------------------------------
// Edge lists: one "i j w" triple per line, '#' starts a comment.

enum class Indexing { zero_based, one_based };

struct EdgeListOptions {
    Indexing indexing = Indexing::zero_based;
    /// When set, every weight must be one of these values.
    std::optional<std::set<double>> allowed_weights;
    /// When absent the node count is max index + 1.
    std::optional<std::size_t> n;
};

/// Parses edge-list text. `source` names the input in error messages.
LayerGraph parse_edge_list(const std::string& text, const EdgeListOptions& options,
                           const std::string& source = "<edges>");
LayerGraph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options);

/// Two-layer contact dataset: layer A weights in {1}, layer B weights in {1,2,3,4}.
std::pair<LayerGraph, LayerGraph> load_two_layer_dataset(const std::filesystem::path& path_a,
                                                         const std::filesystem::path& path_b, std::size_t n,
                                                         Indexing indexing);

/// Writes "i j w" lines (0-based, i < j) with 17 significant digits.
std::string format_edge_list(const LayerGraph& layer);

}  // namespace mplex
