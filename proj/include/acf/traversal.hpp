#ifndef ACF_TRAVERSAL_HPP
#define ACF_TRAVERSAL_HPP

#include "acf/graph.hpp"

#include <cstdint>
#include <vector>

namespace acf {

/** Distance marker for nodes not reachable from the BFS source. */
constexpr uint32_t unreachable = std::numeric_limits<uint32_t>::max();

/**
 * Unweighted shortest-path distances from source; unreachable nodes carry the
 * `unreachable` marker.
 *
 * @throws std::invalid_argument if source is out of range.
 */
std::vector<uint32_t> bfs_distances(const Graph &g, node source);

/** Connected components labeling with sizes sorted descending. */
struct Components {
    std::vector<node> label;  // per node, 0-based component index
    std::vector<node> sizes;  // by component index
    std::vector<node> order;  // component indices sorted by size descending

    node count() const { return static_cast<node>(sizes.size()); }
    node largest_size() const { return sizes[order.front()]; }
    node largest_label() const { return order.front(); }

    std::vector<node> sizes_desc() const {
        std::vector<node> out;
        out.reserve(sizes.size());
        for (const node c : order)
            out.push_back(sizes[c]);
        return out;
    }
};

Components connected_components(const Graph &g);

} // namespace acf

#endif
