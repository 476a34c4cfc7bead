#ifndef ACF_GENERATORS_HPP
#define ACF_GENERATORS_HPP

#include "acf/graph.hpp"

#include <cstdint>

namespace acf {

/**
 * Watts-Strogatz small world, original rewiring variant: a ring lattice where
 * each node connects to its k nearest neighbors, then every lattice edge's far
 * endpoint is rewired with probability p to a uniform target that creates
 * neither a self-loop nor a duplicate. Edge count stays exactly n*k/2.
 *
 * @pre n > k >= 2, k even, 0 <= p <= 1.
 */
Graph generate_watts_strogatz(node n, node k, double p, uint64_t seed);

/**
 * Erdos-Renyi G(n, p); each of the n(n-1)/2 pairs kept independently with
 * probability p, enumerated with geometric skips so sparse graphs cost
 * O(n + m).
 */
Graph generate_erdos_renyi(node n, double p, uint64_t seed);

/**
 * Barabasi-Albert preferential attachment: nodes m0..n-1 arrive one at a time
 * and attach to m0 distinct existing nodes chosen proportionally to degree
 * (first arrival attaches to the m0 initially empty nodes). Yields
 * m = m0 * (n - m0) edges and a connected graph.
 *
 * @pre 1 <= m0 < n.
 */
Graph generate_barabasi_albert(node n, node m0, uint64_t seed);

} // namespace acf

#endif
