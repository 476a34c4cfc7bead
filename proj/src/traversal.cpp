#include "acf/traversal.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace acf {

std::vector<uint32_t> bfs_distances(const Graph &g, node source) {
    if (source >= g.n())
        throw std::invalid_argument("bfs_distances: source out of range");
    std::vector<uint32_t> dist(g.n(), unreachable);
    std::vector<node> queue;
    queue.reserve(g.n());
    dist[source] = 0;
    queue.push_back(source);
    for (size_t head = 0; head < queue.size(); ++head) {
        const node v = queue[head];
        const uint32_t dv = dist[v];
        for (const node w : g.neighbors(v)) {
            if (dist[w] == unreachable) {
                dist[w] = dv + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

Components connected_components(const Graph &g) {
    Components comps;
    comps.label.assign(g.n(), none);
    std::vector<node> queue;
    for (node start = 0; start < g.n(); ++start) {
        if (comps.label[start] != none)
            continue;
        const node c = static_cast<node>(comps.sizes.size());
        comps.sizes.push_back(0);
        comps.label[start] = c;
        queue.clear();
        queue.push_back(start);
        while (!queue.empty()) {
            const node v = queue.back();
            queue.pop_back();
            ++comps.sizes[c];
            for (const node w : g.neighbors(v)) {
                if (comps.label[w] == none) {
                    comps.label[w] = c;
                    queue.push_back(w);
                }
            }
        }
    }
    comps.order.resize(comps.sizes.size());
    std::iota(comps.order.begin(), comps.order.end(), 0);
    std::stable_sort(comps.order.begin(), comps.order.end(),
                     [&](node a, node b) { return comps.sizes[a] > comps.sizes[b]; });
    return comps;
}

} // namespace acf
