#ifndef ACF_SOLVER_HPP
#define ACF_SOLVER_HPP

#include "acf/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <list>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace acf {

/**
 * Conductance parameter of the grounded electrical model. Strictly inside
 * (0,1): at 1 the system degenerates to the singular graph Laplacian, at 0 no
 * current flows.
 */
struct Alpha {
    double value;

    explicit Alpha(double a);
};

enum class SolveMethod { direct, power, montecarlo };

const char *to_string(SolveMethod m);
SolveMethod parse_method(const std::string &name);

/** Parameters shared by the row solvers. */
struct SolverConfig {
    SolveMethod method = SolveMethod::direct;
    double epsilon = 1e-8;           // absolute row tolerance (direct/power)
    uint64_t max_iterations = 0;     // power terms; 0 = derive from epsilon
    uint64_t walks_per_source = 200000; // Monte Carlo sample size
    uint64_t seed = 1;               // Monte Carlo stream seed
    node dense_limit = 5000;         // guard for dense factorizations
};

/**
 * One row c_{s,.} of C = [D - alpha*A]^{-1}. On connected graphs all entries
 * are positive and the diagonal entry is the row maximum.
 */
struct PotentialRow {
    node source = none;
    std::vector<double> values;
    SolveMethod method = SolveMethod::direct;
    /** Guaranteed error bound (power), nominal machine precision (direct), or
     *  the largest per-entry standard error (Monte Carlo). */
    double tolerance = 0.0;
};

/**
 * Number of power-series terms that brings the geometric tail of
 * sum_k alpha^k P^k below epsilon. The tail after K terms is at most
 * alpha^(K+1)/(1-alpha) even when the step distributions do not decay (e.g.
 * bipartite graphs), so K solves alpha^K <= epsilon*(1-alpha); still
 * O(log eps / log alpha).
 */
uint64_t power_iteration_count(Alpha alpha, double epsilon);

/**
 * Compute row s of C by the configured method.
 *
 * direct: dense Cholesky solve of [D - alpha*A] x = e_s (exact to rounding).
 * power:  accumulate y = sum_{k<=K} alpha^k (e_s^T P^k) with P = D^{-1} A,
 *         then c_{s,v} = y_v / d_v; max error <= epsilon.
 * montecarlo: average every-visit counts of walks from s that continue with
 *         probability alpha, divided by d_v; per-entry standard errors
 *         shrink as 1/sqrt(walks). Per-walk streams derive from
 *         (seed, source, walk index), so results are thread-order invariant.
 *
 * @throws std::runtime_error on graphs with an isolated node (the matrix is
 *         singular) or when the dense guard is exceeded.
 */
PotentialRow solve_row(const Graph &g, Alpha alpha, node s, const SolverConfig &cfg = {});

/**
 * Batched solve_row over distinct sources; the power method processes sources
 * in SIMD-friendly blocks, the direct method factorizes once.
 */
std::vector<PotentialRow> solve_rows(const Graph &g, Alpha alpha, std::span<const node> sources,
                                     const SolverConfig &cfg = {});

/**
 * Voltage drop phi_v - phi_w across edge {v,w} for the unit (s,t) flow,
 * reconstructed from rows s and t:
 *   (c_{s,v} - c_{s,w}) + (c_{s,t}/c_{t,t}) (c_{t,w} - c_{t,v}).
 * Antisymmetric in (v,w).
 *
 * @throws std::invalid_argument if {v,w} is not an edge or rows mismatch.
 */
double voltage_drop(const Graph &g, const PotentialRow &row_s, const PotentialRow &row_t,
                    node v, node w);

/**
 * Independent oracle: solve the grounded Kirchhoff system directly. Unit
 * current enters at s, leaves at the grounded node t; the system is
 * [D - alpha*A] restricted to V \ {t} (degrees from the full graph) with
 * right-hand side e_s. Returns the full potential vector with phi_t = 0.
 */
std::vector<double> solve_kirchhoff_direct(const Graph &g, Alpha alpha, node s, node t,
                                           node dense_limit = 5000);

/**
 * Dense C = [D - alpha*A]^{-1}, row-major n*n. Exact-mode centralities use
 * this below the dense guard.
 */
std::vector<double> dense_inverse(const Graph &g, Alpha alpha, node dense_limit = 5000);

/** Cache key: the tuple that makes a row reusable. */
struct RowKey {
    uint64_t graph_id;
    double alpha;
    node source;
    SolveMethod method;
    double epsilon;

    bool operator==(const RowKey &) const = default;
};

struct RowKeyHash {
    size_t operator()(const RowKey &k) const;
};

/**
 * Bounded LRU cache of potential rows shared across sampling batches.
 * Thread-safe for concurrent find/insert.
 */
class RowCache {
public:
    explicit RowCache(size_t capacity);

    std::shared_ptr<const PotentialRow> find(const RowKey &key);
    void insert(const RowKey &key, std::shared_ptr<const PotentialRow> row);

    size_t size() const;
    uint64_t hits() const { return hits_; }
    uint64_t misses() const { return misses_; }

private:
    size_t capacity_;
    mutable std::mutex mutex_;
    std::list<RowKey> lru_; // front = most recent
    std::unordered_map<RowKey, std::pair<std::shared_ptr<const PotentialRow>, std::list<RowKey>::iterator>,
                       RowKeyHash>
        map_;
    uint64_t hits_ = 0;
    uint64_t misses_ = 0;
};

/**
 * Fetch rows for the given sources (distinct), serving from the cache and
 * batch-computing the misses. Returns rows in source order. cache may be
 * null.
 */
std::vector<std::shared_ptr<const PotentialRow>>
rows_through_cache(const Graph &g, Alpha alpha, std::span<const node> sources,
                   const SolverConfig &cfg, RowCache *cache);

/**
 * Binary row spill format, little-endian: u64 node count, f64 alpha,
 * u64 source, u32 method, f64 epsilon, then node-count f64 values.
 */
void write_potential_row(std::ostream &out, const Graph &g, Alpha alpha,
                         const PotentialRow &row, double epsilon);
PotentialRow read_potential_row(std::istream &in, uint64_t *n_out = nullptr,
                                double *alpha_out = nullptr, double *epsilon_out = nullptr);

} // namespace acf

#endif
