#ifndef ACF_STATS_HPP
#define ACF_STATS_HPP

#include "acf/graph.hpp"

#include <cstdint>

namespace acf {

/** Summary statistics of a graph, as reported for the benchmark datasets. */
struct GraphStats {
    node n;
    edgeid m;
    double mean_degree;     // 2m/n
    uint32_t diameter;      // of the largest connected component
    double clustering;      // mean local clustering, degree<2 nodes count as 0
    double mean_distance;   // mean shortest-path distance inside the LCC
};

/**
 * Exact statistics via all-source BFS over the largest component and
 * per-node triangle counting. Sources run in parallel.
 *
 * @throws std::invalid_argument on graphs without edges.
 */
GraphStats compute_stats(const Graph &g);

/**
 * Mean local clustering coefficient: average over all nodes of
 * triangles(v) / (d_v choose 2), where nodes of degree < 2 contribute 0.
 * (Excluding those nodes instead would give a higher value; this convention
 * matches the reported dataset tables.)
 */
double mean_local_clustering(const Graph &g);

} // namespace acf

#endif
