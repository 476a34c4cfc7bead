#ifndef ACF_CENTRALITY_HPP
#define ACF_CENTRALITY_HPP

#include "acf/graph.hpp"
#include "acf/rng.hpp"
#include "acf/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace acf {

/** Provenance of a score vector: what was measured and with which knobs. */
struct MeasureInfo {
    std::string name;       // degree | pagerank | closeness | betweenness | cf | acf | acf-tr
    double alpha = 0.0;     // 0 when the measure has no alpha
    bool truncated = false;
    uint64_t samples = 0;   // sampled pair count; 0 = exact
    uint64_t seed = 0;
};

/** Display label, e.g. "acf:0.98" or "acf-tr:0.8" or plain "degree". */
std::string measure_label(const MeasureInfo &info);

/** Per-edge scores keyed by canonical edge id. */
struct EdgeScores {
    MeasureInfo info;
    std::vector<double> values;
    std::vector<double> stderrs; // per-edge standard error; sampled mode only
};

/** Per-node scores. */
struct NodeScores {
    MeasureInfo info;
    std::vector<double> values;
};

/** Seeded stream of uniform ordered pairs (s,t), s != t. */
class PairSampler {
public:
    PairSampler(node n, uint64_t seed);

    std::pair<node, node> next();

private:
    Rng rng_;
    node n_;
};

struct ExactOptions {
    uint64_t pair_budget = 4'000'000; // max ordered pairs for exact mode
    node dense_limit = 5000;
};

/**
 * Exact alpha-current-flow betweenness: average absolute voltage drop per
 * edge over all n(n-1) ordered source-destination pairs, plus node scores as
 * the sum over adjacent edges. Truncated mode drops, per edge {v,w}, every
 * pair whose source is v or w, and renormalizes that edge by its included
 * pair count ((n-1)(n-2); defined as 0 when nothing remains, i.e. n = 2).
 *
 * @throws std::runtime_error when n(n-1) exceeds the pair budget (use the
 *         sampled estimator instead) or the dense guard trips.
 */
std::pair<EdgeScores, NodeScores> alpha_cf_exact(const Graph &g, Alpha alpha,
                                                 bool truncated = false,
                                                 const ExactOptions &opts = {});

/** Plain and truncated exact scores from a single all-pairs pass. */
struct AlphaCfExactResult {
    EdgeScores edges_plain, edges_truncated;
    NodeScores nodes_plain, nodes_truncated;
};
AlphaCfExactResult alpha_cf_exact_full(const Graph &g, Alpha alpha, const ExactOptions &opts = {});

struct SampleOptions {
    uint64_t pairs = 1000;
    bool truncated = false;
    uint64_t seed = 1;
    bool enumerate_all = false; // debug: all ordered pairs instead of sampling
    RowCache *cache = nullptr;  // optional row reuse across calls
    size_t batch_pairs = 128;   // pairs per row-fetch batch
};

/**
 * Sampled alpha-CF betweenness (Monte Carlo over pairs): mean per-edge
 * |voltage drop| over N sampled ordered pairs, with per-edge standard errors.
 * Rows come from the configured solver through an optional cache.
 * Deterministic for a fixed (seed, cfg), independent of thread count.
 */
std::pair<EdgeScores, NodeScores> alpha_cf_sampled(const Graph &g, Alpha alpha,
                                                   const SampleOptions &opts,
                                                   const SolverConfig &cfg = {});

/** Convenience overload mirroring the primary parameters. */
std::pair<EdgeScores, NodeScores> alpha_cf_sampled(const Graph &g, Alpha alpha, uint64_t pairs,
                                                   bool truncated, uint64_t seed,
                                                   const SolverConfig &cfg = {});

/**
 * Original current-flow betweenness (the alpha -> 1 limit): grounded
 * Laplacian potentials via the dense inverse of L + J/n, averaged over all
 * ordered pairs; node scores keep the adjacent-edge-sum convention so the
 * alpha variants compare like for like.
 *
 * @throws std::runtime_error on disconnected graphs (singular system) or
 *         when the dense guard trips.
 */
std::pair<EdgeScores, NodeScores> cf_betweenness_baseline(const Graph &g, node dense_limit = 5000);

/**
 * Exact shortest-path betweenness (Brandes), edge and node variants,
 * normalized by 1/(n(n-1)) over ordered pairs.
 */
std::pair<EdgeScores, NodeScores> shortest_path_betweenness(const Graph &g);

/**
 * Classic closeness (n-1)/sum of distances. On disconnected graphs each
 * node is scored within its own component (component size substitutes n);
 * isolated nodes score 0.
 */
NodeScores closeness(const Graph &g);

/**
 * PageRank by power iteration; degree-0 nodes contribute teleport-only mass.
 * Scores sum to 1.
 */
NodeScores pagerank(const Graph &g, double damping = 0.85, double epsilon = 1e-12);

/** Raw degree d_v. */
NodeScores degree_centrality(const Graph &g);

/** Parsed measure selector, e.g. "acf:0.8", "acf-tr:0.8", "betweenness". */
struct MeasureSpec {
    std::string kind;      // degree | pagerank | closeness | betweenness | cf | acf
    double alpha = 0.0;    // 0 = use the per-mode default (0.98 plain, 0.8 truncated)
    bool truncated = false;

    double effective_alpha() const { return alpha > 0 ? alpha : (truncated ? 0.8 : 0.98); }
};

/** @throws std::invalid_argument on unknown names or bad alpha suffixes. */
MeasureSpec parse_measure(const std::string &text);

/** Shared knobs for computing any measure. */
struct MeasureParams {
    bool exact = true;      // alpha-CF: exact pass vs sampled estimator
    uint64_t pairs = 1000;  // sampled pair count
    uint64_t seed = 1;
    SolverConfig solver;    // row solver for sampled alpha-CF
    ExactOptions exact_opts;
    RowCache *cache = nullptr;
};

struct MeasureResult {
    NodeScores nodes;
    std::optional<EdgeScores> edges; // engaged for edge-valued measures
};

MeasureResult compute_measure(const Graph &g, const MeasureSpec &spec, const MeasureParams &params);

} // namespace acf

#endif
