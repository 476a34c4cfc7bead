#include "acf/analysis.hpp"

#include "acf/traversal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace acf {

namespace {

/** Pairs (i<j) lying in a common tie group, given group run lengths. */
uint64_t tie_pairs(const std::vector<uint64_t> &runs) {
    uint64_t total = 0;
    for (const uint64_t c : runs)
        total += c * (c - 1) / 2;
    return total;
}

/** Stable merge sort counting strict inversions (x[i] > x[j], i < j). */
uint64_t count_inversions(std::vector<double> &x, std::vector<double> &scratch) {
    const size_t n = x.size();
    uint64_t inversions = 0;
    for (size_t width = 1; width < n; width *= 2) {
        for (size_t left = 0; left + width < n; left += 2 * width) {
            const size_t mid = left + width;
            const size_t right = std::min(left + 2 * width, n);
            size_t i = left, j = mid, k = left;
            while (i < mid && j < right) {
                if (x[j] < x[i]) {
                    inversions += mid - i;
                    scratch[k++] = x[j++];
                } else {
                    scratch[k++] = x[i++];
                }
            }
            while (i < mid)
                scratch[k++] = x[i++];
            while (j < right)
                scratch[k++] = x[j++];
            std::copy(scratch.begin() + left, scratch.begin() + right, x.begin() + left);
        }
    }
    return inversions;
}

} // namespace

double kendall_tau(const std::vector<double> &a, const std::vector<double> &b) {
    const size_t n = a.size();
    if (n != b.size())
        throw std::invalid_argument("kendall_tau: input lengths differ");
    if (n < 2)
        throw std::invalid_argument("kendall_tau: need at least two items");

    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](size_t i, size_t j) {
        if (a[i] != a[j])
            return a[i] < a[j];
        return b[i] < b[j];
    });

    // Tie bookkeeping in a, in b, and jointly.
    std::vector<uint64_t> runs_a, runs_b, runs_ab;
    for (size_t i = 0; i < n;) {
        size_t j = i;
        while (j < n && a[perm[j]] == a[perm[i]])
            ++j;
        runs_a.push_back(j - i);
        for (size_t k = i; k < j;) {
            size_t l = k;
            while (l < j && b[perm[l]] == b[perm[k]])
                ++l;
            runs_ab.push_back(l - k);
            k = l;
        }
        i = j;
    }

    std::vector<double> bs(n);
    for (size_t i = 0; i < n; ++i)
        bs[i] = b[perm[i]];
    std::vector<double> scratch(n);
    const uint64_t discordant = count_inversions(bs, scratch); // bs now sorted
    for (size_t i = 0; i < n;) {
        size_t j = i;
        while (j < n && bs[j] == bs[i])
            ++j;
        runs_b.push_back(j - i);
        i = j;
    }

    const uint64_t tot = static_cast<uint64_t>(n) * (n - 1) / 2;
    const uint64_t xtie = tie_pairs(runs_a);
    const uint64_t ytie = tie_pairs(runs_b);
    const uint64_t ntie = tie_pairs(runs_ab);
    if (xtie == tot || ytie == tot)
        throw std::runtime_error("kendall_tau: input is constant; tau is undefined");

    const double con_minus_dis = static_cast<double>(tot) - xtie - ytie + ntie -
                                 2.0 * static_cast<double>(discordant);
    const double tau = con_minus_dis / (std::sqrt(static_cast<double>(tot - xtie)) *
                                        std::sqrt(static_cast<double>(tot - ytie)));
    return std::clamp(tau, -1.0, 1.0);
}

CorrelationMatrix correlation_table(const Graph &g, const std::vector<MeasureSpec> &specs,
                                    const MeasureParams &params) {
    if (specs.empty())
        throw std::invalid_argument("correlation_table: no measures given");
    CorrelationMatrix out;
    std::vector<NodeScores> scores;
    scores.reserve(specs.size());
    for (const auto &spec : specs) {
        scores.push_back(compute_measure(g, spec, params).nodes);
        out.names.push_back(measure_label(scores.back().info));
    }
    const size_t k = specs.size();
    out.tau.assign(k, std::vector<double>(k, 1.0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            out.tau[i][j] = out.tau[j][i] = kendall_tau(scores[i], scores[j]);
    return out;
}

CCDF ccdf(const std::vector<double> &values) {
    if (values.empty())
        throw std::invalid_argument("ccdf: empty input");
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());

    CCDF out;
    out.thresholds = sorted;
    out.thresholds.push_back(0.0);
    std::sort(out.thresholds.begin(), out.thresholds.end());
    out.thresholds.erase(std::unique(out.thresholds.begin(), out.thresholds.end()),
                         out.thresholds.end());
    for (const double x : out.thresholds) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
        out.counts.push_back(static_cast<uint64_t>(above));
    }
    return out;
}

double inverse_average_distance(const Graph &g) {
    const node n = g.n();
    if (n < 2)
        throw std::invalid_argument("inverse_average_distance: need at least two nodes");
    // Per-source partial sums reduced in source order, so results do not
    // depend on the thread count.
    std::vector<double> per_source(n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (node s = 0; s < n; ++s) {
        const auto dist = bfs_distances(g, s);
        double sum = 0.0;
        for (node t = 0; t < n; ++t)
            if (t != s && dist[t] != unreachable)
                sum += 1.0 / dist[t];
        per_source[s] = sum;
    }
    double total = 0.0;
    for (const double x : per_source)
        total += x;
    return total / (static_cast<double>(n) * (n - 1));
}

namespace {

std::vector<node> removal_order(const std::vector<double> &score) {
    std::vector<node> order(score.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](node x, node y) {
        if (score[x] != score[y])
            return score[x] > score[y];
        return x < y;
    });
    return order;
}

node default_step(node n) { return n <= 200 ? 1 : std::max<node>(1, n / 100); }

void record_point(RemovalTrace &trace, const Graph &residual, double fraction) {
    trace.fraction.push_back(fraction);
    trace.inv_avg_distance.push_back(inverse_average_distance(residual));
    trace.lcc_size.push_back(connected_components(residual).largest_size());
}

} // namespace

RemovalTrace vulnerability_sweep(const Graph &g, const NodeScores &ranking, node step_nodes) {
    if (ranking.values.size() != g.n())
        throw std::invalid_argument("vulnerability_sweep: ranking does not match the graph");
    const node n = g.n();
    if (n < 2)
        throw std::invalid_argument("vulnerability_sweep: need at least two nodes");
    const node step = step_nodes ? step_nodes : default_step(n);
    const std::vector<node> order = removal_order(ranking.values);

    RemovalTrace trace;
    trace.strategy = measure_label(ranking.info);
    std::vector<bool> keep(n, true);
    for (node removed = 0; removed + 2 <= n; removed += step) {
        for (node i = removed >= step ? removed - step : 0; i < removed; ++i)
            keep[order[i]] = false;
        const auto [residual, old_of] = induced_subgraph(g, keep);
        record_point(trace, residual, static_cast<double>(removed) / n);
    }
    return trace;
}

RemovalTrace vulnerability_sweep_recompute(const Graph &g, const MeasureSpec &spec,
                                           const MeasureParams &params, node step_nodes) {
    const node n = g.n();
    if (n < 2)
        throw std::invalid_argument("vulnerability_sweep: need at least two nodes");
    const node step = step_nodes ? step_nodes : default_step(n);

    MeasureInfo info;
    info.name = spec.truncated ? "acf-tr" : spec.kind;
    info.alpha = spec.kind == "acf" ? spec.effective_alpha() : 0.0;
    info.truncated = spec.truncated;

    RemovalTrace trace;
    trace.strategy = measure_label(info) + "+recompute";
    std::vector<bool> keep(n, true);
    node removed = 0;
    for (;;) {
        const auto [residual, old_of] = induced_subgraph(g, keep);
        record_point(trace, residual, static_cast<double>(removed) / n);
        if (n - removed < 2 + step)
            break;
        // Once the residual fragments, some measures become ill-posed (the
        // current-flow baseline needs a connected graph, the alpha variants
        // need every degree positive).  Rank by the measure restricted to the
        // largest component and treat detached nodes as contributing nothing
        // to connectivity; they fall to the bottom of the removal order.
        const Components comps = connected_components(residual);
        std::vector<double> values(residual.n(), 0.0);
        if (comps.largest_size() >= 2) {
            std::vector<bool> in_core(residual.n());
            for (node v = 0; v < residual.n(); ++v)
                in_core[v] = comps.label[v] == comps.largest_label();
            const auto [core, core_of] = induced_subgraph(residual, in_core);
            const NodeScores scores = compute_measure(core, spec, params).nodes;
            for (node v = 0; v < core.n(); ++v)
                values[core_of[v]] = scores.values[v];
        }
        // Top `step` residual nodes; ties by ascending original id.
        std::vector<node> order(residual.n());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](node x, node y) {
            if (values[x] != values[y])
                return values[x] > values[y];
            return old_of[x] < old_of[y];
        });
        for (node i = 0; i < step; ++i)
            keep[old_of[order[i]]] = false;
        removed += step;
    }
    return trace;
}

} // namespace acf
