#include "mplex/select.hpp"

#include "mplex/error.hpp"
#include "mplex/stochastic.hpp"

#include <algorithm>
#include <numeric>

namespace mplex {
namespace {

bool admissible(const LayerGraph& a, const LayerGraph& b, const std::vector<std::uint64_t>& ks)
{
    if (a.has_isolated_node() || b.has_isolated_node()) return false;
    const TransitionMatrix ta = transition_matrix(a);
    if (!is_primitive(ta).primitive) return false;
    const TransitionMatrix tb = transition_matrix(b);
    for (std::uint64_t k : ks)
        if (k > 0 && !is_primitive(tb * power(ta, k)).primitive) return false;
    return true;
}

}  // namespace

SelectionResult select_nonconsensus_subset(const LayerGraph& layer1, const LayerGraph& layer2,
                                           const SelectionOptions& options)
{
    if (layer1.size() != layer2.size()) throw InvalidArgument("select_nonconsensus_subset: size mismatch");
    SelectionResult out;
    std::vector<std::size_t> kept(layer1.size());
    std::iota(kept.begin(), kept.end(), std::size_t{0});

    if (!admissible(layer1, layer2, options.ks)) {
        out.reason = "the full population already violates the layer-1 or cycle primitivity requirement";
        out.nodes = kept;
        return out;
    }
    for (;;) {
        const LayerGraph b = induced_subgraph(layer2, kept);
        if (!is_primitive(transition_matrix(b)).primitive) {
            out.success = true;
            out.nodes = kept;
            return out;
        }
        if (kept.size() <= options.min_size) {
            out.reason = "reached the minimum size with layer 2 still primitive";
            out.nodes = kept;
            return out;
        }
        std::vector<std::size_t> order(kept.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return b.degree(x) > b.degree(y); });
        bool removed = false;
        for (std::size_t pos : order) {
            std::vector<std::size_t> trial = kept;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
            if (admissible(induced_subgraph(layer1, trial), induced_subgraph(layer2, trial), options.ks)) {
                out.removed.push_back(kept[pos]);
                kept = std::move(trial);
                removed = true;
                break;
            }
        }
        if (!removed) {
            out.reason = "no node can be removed without breaking an admissibility requirement";
            out.nodes = kept;
            return out;
        }
    }
}

}  // namespace mplex
