#pragma once

// Greedy node removal producing a sub-population on which layer 2 alone has
// no consensus while layer 1 and every switching cycle B A^k stay primitive.

#include "mplex/netcore.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mplex {

struct SelectionOptions {
    /// Cycle lengths whose B A^k must remain primitive (k = 0 is ignored).
    std::vector<std::uint64_t> ks{3, 5};
    std::size_t min_size = 3;
};

struct SelectionResult {
    bool success = false;
    std::vector<std::size_t> nodes;    // kept nodes, ascending
    std::vector<std::size_t> removed;  // in removal order
    std::string reason;
};

/// Repeatedly removes the node of largest layer-2 degree (ties: lower index)
/// among those whose removal leaves no isolated node in either layer and
/// keeps layer 1 and all B A^k primitive. Stops as soon as layer 2 is not
/// primitive on the kept nodes.
SelectionResult select_nonconsensus_subset(const LayerGraph& layer1, const LayerGraph& layer2,
                                           const SelectionOptions& options = {});

}  // namespace mplex
