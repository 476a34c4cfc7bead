#include "acf/stats.hpp"

#include "acf/traversal.hpp"

#include <algorithm>
#include <stdexcept>

namespace acf {

double mean_local_clustering(const Graph &g) {
    double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (node v = 0; v < g.n(); ++v) {
        const auto nv = g.neighbors(v);
        const node d = static_cast<node>(nv.size());
        if (d < 2)
            continue;
        // Count edges among neighbors once each: intersect N(v) with N(w) and
        // keep only partners x > w.
        uint64_t links = 0;
        for (const node w : nv) {
            const auto nw = g.neighbors(w);
            size_t i = 0, j = 0;
            while (i < nv.size() && j < nw.size()) {
                if (nv[i] < nw[j])
                    ++i;
                else if (nv[i] > nw[j])
                    ++j;
                else {
                    if (nv[i] > w)
                        ++links;
                    ++i;
                    ++j;
                }
            }
        }
        total += static_cast<double>(links) / (0.5 * d * (d - 1));
    }
    return total / g.n();
}

GraphStats compute_stats(const Graph &g) {
    if (g.m() == 0)
        throw std::invalid_argument("compute_stats: graph has no edges");

    GraphStats s{};
    s.n = g.n();
    s.m = g.m();
    s.mean_degree = 2.0 * g.m() / g.n();
    s.clustering = mean_local_clustering(g);

    const Components comps = connected_components(g);
    const node lcc = comps.largest_label();
    std::vector<node> members;
    members.reserve(comps.largest_size());
    for (node v = 0; v < g.n(); ++v)
        if (comps.label[v] == lcc)
            members.push_back(v);

    uint32_t diameter = 0;
    uint64_t dist_sum = 0;
    uint64_t pair_count = 0;
#pragma omp parallel
    {
        uint32_t local_diam = 0;
        uint64_t local_sum = 0;
        uint64_t local_pairs = 0;
#pragma omp for schedule(dynamic, 16) nowait
        for (size_t i = 0; i < members.size(); ++i) {
            const auto dist = bfs_distances(g, members[i]);
            for (const node w : members) {
                if (w == members[i])
                    continue;
                local_diam = std::max(local_diam, dist[w]);
                local_sum += dist[w];
                ++local_pairs;
            }
        }
#pragma omp critical
        {
            diameter = std::max(diameter, local_diam);
            dist_sum += local_sum;
            pair_count += local_pairs;
        }
    }
    s.diameter = diameter;
    s.mean_distance = pair_count ? static_cast<double>(dist_sum) / pair_count : 0.0;
    return s;
}

} // namespace acf
