#ifndef ACF_ANALYSIS_HPP
#define ACF_ANALYSIS_HPP

#include "acf/centrality.hpp"
#include "acf/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace acf {

/**
 * Kendall tau-b (tie-corrected) rank correlation in O(n log n) via merge-sort
 * inversion counting.
 *
 * @throws std::runtime_error if either input is all-constant (tau undefined).
 * @throws std::invalid_argument on length mismatch or length < 2.
 */
double kendall_tau(const std::vector<double> &a, const std::vector<double> &b);

inline double kendall_tau(const NodeScores &a, const NodeScores &b) {
    return kendall_tau(a.values, b.values);
}

/** Pairwise Kendall tau over a list of measures; unit diagonal, symmetric. */
struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> tau;
};

CorrelationMatrix correlation_table(const Graph &g, const std::vector<MeasureSpec> &specs,
                                    const MeasureParams &params);

/** Empirical complementary cumulative counts: how many items exceed x. */
struct CCDF {
    std::vector<double> thresholds; // 0 plus every distinct value, ascending
    std::vector<uint64_t> counts;   // items with value > threshold
};

/** @throws std::invalid_argument on empty input. */
CCDF ccdf(const std::vector<double> &values);

/**
 * Mean inverse shortest-path distance over ordered pairs; disconnected pairs
 * contribute 0 (the 1/infinity convention).
 *
 * @pre n >= 2.
 */
double inverse_average_distance(const Graph &g);

/** One targeted-removal experiment: connectivity vs fraction removed. */
struct RemovalTrace {
    std::string strategy;
    std::vector<double> fraction;         // strictly increasing, starts at 0
    std::vector<double> inv_avg_distance; // of the residual graph
    std::vector<node> lcc_size;           // non-increasing
};

/**
 * Remove nodes in descending ranking order (ties by ascending id), the
 * ranking computed once on the intact graph, recording residual
 * inverse-average-distance and LCC size each step. step_nodes = 0 picks
 * 1-node steps for n <= 200 and 1% steps otherwise; the sweep stops while at
 * least two nodes remain.
 */
RemovalTrace vulnerability_sweep(const Graph &g, const NodeScores &ranking,
                                 node step_nodes = 0);

/**
 * Variant that recomputes the ranking measure on the residual graph before
 * each removal step. Measure errors (e.g. a baseline that requires a
 * connected graph) propagate.
 */
RemovalTrace vulnerability_sweep_recompute(const Graph &g, const MeasureSpec &spec,
                                           const MeasureParams &params, node step_nodes = 0);

} // namespace acf

#endif
