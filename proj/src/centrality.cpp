#include "acf/centrality.hpp"

#include "acf/traversal.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace acf {

namespace {

#ifdef _OPENMP
int thread_count() { return omp_get_max_threads(); }
#else
int thread_count() { return 1; }
#endif

std::string fmt_alpha(double a) {
    std::string s = std::to_string(a); // e.g. 0.980000
    while (s.size() > 1 && s.back() == '0')
        s.pop_back();
    if (!s.empty() && s.back() == '.')
        s.pop_back();
    return s;
}

NodeScores adjacent_edge_sums(const Graph &g, const EdgeScores &edges) {
    NodeScores nodes;
    nodes.info = edges.info;
    nodes.values.assign(g.n(), 0.0);
    for (node v = 0; v < g.n(); ++v) {
        double sum = 0.0;
        for (const edgeid e : g.incident_edges(v))
            sum += edges.values[e];
        nodes.values[v] = sum;
    }
    return nodes;
}

} // namespace

std::string measure_label(const MeasureInfo &info) {
    if (info.name == "acf" || info.name == "acf-tr")
        return info.name + ":" + fmt_alpha(info.alpha);
    return info.name;
}

PairSampler::PairSampler(node n, uint64_t seed)
    : rng_(Rng::derive(seed, 0x70730001ULL, n)), n_(n) {
    if (n < 2)
        throw std::invalid_argument("PairSampler: need at least two nodes");
}

std::pair<node, node> PairSampler::next() {
    const node s = static_cast<node>(rng_.next_below(n_));
    node t = static_cast<node>(rng_.next_below(n_ - 1));
    if (t >= s)
        ++t;
    return {s, t};
}

AlphaCfExactResult alpha_cf_exact_full(const Graph &g, Alpha alpha, const ExactOptions &opts) {
    const node n = g.n();
    if (n < 2)
        throw std::invalid_argument("alpha_cf_exact: need at least two nodes");
    const uint64_t pair_count = static_cast<uint64_t>(n) * (n - 1);
    if (pair_count > opts.pair_budget)
        throw std::runtime_error(
            "alpha_cf_exact: " + std::to_string(pair_count) +
            " ordered pairs exceed the exact-mode budget (" + std::to_string(opts.pair_budget) +
            "); use the sampled estimator (alpha_cf_sampled / --pairs)");

    const std::vector<double> C = dense_inverse(g, alpha, opts.dense_limit);
    std::vector<double> inv_diag(n);
    for (node t = 0; t < n; ++t)
        inv_diag[t] = 1.0 / C[static_cast<size_t>(t) * n + t];

    const edgeid m = g.m();
    AlphaCfExactResult out;
    out.edges_plain.values.assign(m, 0.0);
    out.edges_truncated.values.assign(m, 0.0);

    const double plain_norm = 1.0 / static_cast<double>(pair_count);
    const double trunc_norm =
        n > 2 ? 1.0 / (static_cast<double>(n - 1) * (n - 2)) : 0.0;

#pragma omp parallel
    {
        std::vector<double> a(n);
#pragma omp for schedule(static)
        for (edgeid e = 0; e < m; ++e) {
            const auto [v, w] = g.edges()[e];
            for (node x = 0; x < n; ++x)
                a[x] = C[static_cast<size_t>(v) * n + x] - C[static_cast<size_t>(w) * n + x];
            double sum_all = 0.0, sum_excluded = 0.0;
            for (node s = 0; s < n; ++s) {
                const double *Cs = C.data() + static_cast<size_t>(s) * n;
                const double a_s = a[s];
                double row_sum = 0.0;
                for (node t = 0; t < n; ++t) {
                    if (t == s)
                        continue;
                    row_sum += std::abs(a_s - Cs[t] * inv_diag[t] * a[t]);
                }
                sum_all += row_sum;
                if (s == v || s == w)
                    sum_excluded += row_sum;
            }
            out.edges_plain.values[e] = sum_all * plain_norm;
            out.edges_truncated.values[e] = (sum_all - sum_excluded) * trunc_norm;
        }
    }

    out.edges_plain.info = {"acf", alpha.value, false, 0, 0};
    out.edges_truncated.info = {"acf-tr", alpha.value, true, 0, 0};
    out.nodes_plain = adjacent_edge_sums(g, out.edges_plain);
    out.nodes_truncated = adjacent_edge_sums(g, out.edges_truncated);
    return out;
}

std::pair<EdgeScores, NodeScores> alpha_cf_exact(const Graph &g, Alpha alpha, bool truncated,
                                                 const ExactOptions &opts) {
    AlphaCfExactResult full = alpha_cf_exact_full(g, alpha, opts);
    if (truncated)
        return {std::move(full.edges_truncated), std::move(full.nodes_truncated)};
    return {std::move(full.edges_plain), std::move(full.nodes_plain)};
}

std::pair<EdgeScores, NodeScores> alpha_cf_sampled(const Graph &g, Alpha alpha,
                                                   const SampleOptions &opts,
                                                   const SolverConfig &cfg) {
    const node n = g.n();
    if (n < 2)
        throw std::invalid_argument("alpha_cf_sampled: need at least two nodes");

    std::vector<std::pair<node, node>> pairs;
    if (opts.enumerate_all) {
        pairs.reserve(static_cast<size_t>(n) * (n - 1));
        for (node s = 0; s < n; ++s)
            for (node t = 0; t < n; ++t)
                if (s != t)
                    pairs.emplace_back(s, t);
    } else {
        if (opts.pairs == 0)
            throw std::invalid_argument("alpha_cf_sampled: need at least one pair");
        PairSampler sampler(n, opts.seed);
        pairs.reserve(opts.pairs);
        for (uint64_t i = 0; i < opts.pairs; ++i)
            pairs.push_back(sampler.next());
    }
    const uint64_t N = pairs.size();

    const edgeid m = g.m();
    std::vector<double> sum(m, 0.0), sumsq(m, 0.0);
    std::vector<double> excl_sum(m, 0.0), excl_sumsq(m, 0.0);
    std::vector<uint64_t> excl_count(m, 0);

    const size_t batch = std::max<size_t>(1, opts.batch_pairs);
    std::vector<node> endpoints;
    for (size_t base = 0; base < pairs.size(); base += batch) {
        const size_t end = std::min(pairs.size(), base + batch);
        endpoints.clear();
        for (size_t i = base; i < end; ++i) {
            endpoints.push_back(pairs[i].first);
            endpoints.push_back(pairs[i].second);
        }
        std::sort(endpoints.begin(), endpoints.end());
        endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());

        const auto rows = rows_through_cache(g, alpha, endpoints, cfg, opts.cache);
        const auto row_of = [&](node v) -> const PotentialRow & {
            const size_t i = static_cast<size_t>(
                std::lower_bound(endpoints.begin(), endpoints.end(), v) - endpoints.begin());
            return *rows[i];
        };

        for (size_t i = base; i < end; ++i) {
            const auto [s, t] = pairs[i];
            const PotentialRow &rs = row_of(s);
            const PotentialRow &rt = row_of(t);
            const double c_tt = rt.values[t];
            const double ratio = rs.values[t] / c_tt;
            const auto &edges = g.edges();
#pragma omp parallel for schedule(static)
            for (edgeid e = 0; e < m; ++e) {
                const auto [v, w] = edges[e];
                const double a_s = rs.values[v] - rs.values[w];
                const double a_t = rt.values[v] - rt.values[w];
                const double x = std::abs(a_s - ratio * a_t);
                sum[e] += x;
                sumsq[e] += x * x;
            }
            // Pairs sourced at an edge endpoint are the ones truncation drops.
            for (const edgeid e : g.incident_edges(s)) {
                const auto [v, w] = edges[e];
                const double a_s = rs.values[v] - rs.values[w];
                const double a_t = rt.values[v] - rt.values[w];
                const double x = std::abs(a_s - ratio * a_t);
                excl_sum[e] += x;
                excl_sumsq[e] += x * x;
                ++excl_count[e];
            }
        }
    }

    EdgeScores edges;
    edges.info = {opts.truncated ? "acf-tr" : "acf", alpha.value, opts.truncated, N, opts.seed};
    edges.values.assign(m, 0.0);
    edges.stderrs.assign(m, 0.0);
    for (edgeid e = 0; e < m; ++e) {
        double total = sum[e], total_sq = sumsq[e];
        uint64_t count = N;
        if (opts.truncated) {
            total -= excl_sum[e];
            total_sq -= excl_sumsq[e];
            count -= excl_count[e];
        }
        if (count == 0)
            continue; // all pairs excluded: score 0 by convention
        const double mean = total / count;
        edges.values[e] = mean;
        if (count > 1) {
            const double var = (total_sq - count * mean * mean) / (count - 1.0);
            edges.stderrs[e] = std::sqrt(std::max(var, 0.0) / count);
        }
    }
    NodeScores nodes = adjacent_edge_sums(g, edges);
    return {std::move(edges), std::move(nodes)};
}

std::pair<EdgeScores, NodeScores> alpha_cf_sampled(const Graph &g, Alpha alpha, uint64_t pairs,
                                                   bool truncated, uint64_t seed,
                                                   const SolverConfig &cfg) {
    SampleOptions opts;
    opts.pairs = pairs;
    opts.truncated = truncated;
    opts.seed = seed;
    return alpha_cf_sampled(g, alpha, opts, cfg);
}

std::pair<EdgeScores, NodeScores> cf_betweenness_baseline(const Graph &g, node dense_limit) {
    const node n = g.n();
    if (n < 2)
        throw std::invalid_argument("cf_betweenness_baseline: need at least two nodes");
    if (connected_components(g).count() != 1)
        throw std::runtime_error(
            "cf_betweenness_baseline: graph is disconnected; the Laplacian system is singular");
    if (n > dense_limit)
        throw std::runtime_error("cf_betweenness_baseline: n exceeds the dense-solve guard");

    // Invert L + J/n; grounded potentials differ from H-columns only by a
    // constant, which cancels in every edge difference.
    Eigen::MatrixXd M = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    for (node v = 0; v < n; ++v)
        M(v, v) += static_cast<double>(g.degree(v));
    for (const auto &[v, w] : g.edges()) {
        M(v, w) -= 1.0;
        M(w, v) -= 1.0;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("cf_betweenness_baseline: factorization failed");
    const Eigen::MatrixXd H = llt.solve(Eigen::MatrixXd::Identity(n, n));

    const edgeid m = g.m();
    EdgeScores edges;
    edges.info = {"cf", 0.0, false, 0, 0};
    edges.values.assign(m, 0.0);
    const double norm = 1.0 / (static_cast<double>(n) * (n - 1));

#pragma omp parallel
    {
        std::vector<double> b(n);
#pragma omp for schedule(static)
        for (edgeid e = 0; e < m; ++e) {
            const auto [v, w] = g.edges()[e];
            for (node x = 0; x < n; ++x)
                b[x] = H(v, x) - H(w, x);
            double total = 0.0;
            for (node s = 0; s < n; ++s)
                for (node t = 0; t < n; ++t)
                    if (t != s)
                        total += std::abs(b[s] - b[t]);
            edges.values[e] = total * norm;
        }
    }
    NodeScores nodes = adjacent_edge_sums(g, edges);
    return {std::move(edges), std::move(nodes)};
}

std::pair<EdgeScores, NodeScores> shortest_path_betweenness(const Graph &g) {
    const node n = g.n();
    const edgeid m = g.m();
    const int T = thread_count();
    std::vector<std::vector<double>> edge_part(T), node_part(T);

#pragma omp parallel num_threads(T)
    {
#ifdef _OPENMP
        const int tid = omp_get_thread_num();
#else
        const int tid = 0;
#endif
        auto &edge_acc = edge_part[tid];
        auto &node_acc = node_part[tid];
        edge_acc.assign(m, 0.0);
        node_acc.assign(n, 0.0);

        std::vector<uint32_t> dist(n);
        std::vector<double> sigma(n), delta(n);
        std::vector<node> order;
        order.reserve(n);

#pragma omp for schedule(static)
        for (node s = 0; s < n; ++s) {
            std::fill(dist.begin(), dist.end(), unreachable);
            std::fill(sigma.begin(), sigma.end(), 0.0);
            std::fill(delta.begin(), delta.end(), 0.0);
            order.clear();
            dist[s] = 0;
            sigma[s] = 1.0;
            order.push_back(s);
            for (size_t head = 0; head < order.size(); ++head) {
                const node v = order[head];
                for (const node w : g.neighbors(v)) {
                    if (dist[w] == unreachable) {
                        dist[w] = dist[v] + 1;
                        order.push_back(w);
                    }
                    if (dist[w] == dist[v] + 1)
                        sigma[w] += sigma[v];
                }
            }
            for (size_t i = order.size(); i-- > 1;) {
                const node w = order[i];
                const auto nb = g.neighbors(w);
                const auto ie = g.incident_edges(w);
                for (size_t j = 0; j < nb.size(); ++j) {
                    const node v = nb[j];
                    if (dist[v] + 1 == dist[w]) {
                        const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                        edge_acc[ie[j]] += c;
                        delta[v] += c;
                    }
                }
                node_acc[w] += delta[w];
            }
        }
    }

    const double norm = n > 1 ? 1.0 / (static_cast<double>(n) * (n - 1)) : 0.0;
    EdgeScores edges;
    edges.info = {"betweenness", 0.0, false, 0, 0};
    edges.values.assign(m, 0.0);
    NodeScores nodes;
    nodes.info = edges.info;
    nodes.values.assign(n, 0.0);
    for (int t = 0; t < T; ++t) {
        for (edgeid e = 0; e < m; ++e)
            edges.values[e] += edge_part[t][e];
        for (node v = 0; v < n; ++v)
            nodes.values[v] += node_part[t][v];
    }
    for (edgeid e = 0; e < m; ++e)
        edges.values[e] *= norm;
    for (node v = 0; v < n; ++v)
        nodes.values[v] *= norm;
    return {std::move(edges), std::move(nodes)};
}

NodeScores closeness(const Graph &g) {
    const Components comps = connected_components(g);
    NodeScores out;
    out.info = {"closeness", 0.0, false, 0, 0};
    out.values.assign(g.n(), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (node v = 0; v < g.n(); ++v) {
        const node size = comps.sizes[comps.label[v]];
        if (size < 2)
            continue; // isolated node scores 0
        const auto dist = bfs_distances(g, v);
        uint64_t total = 0;
        for (node w = 0; w < g.n(); ++w)
            if (w != v && dist[w] != unreachable)
                total += dist[w];
        out.values[v] = static_cast<double>(size - 1) / static_cast<double>(total);
    }
    return out;
}

NodeScores pagerank(const Graph &g, double damping, double epsilon) {
    if (!(damping >= 0.0) || !(damping < 1.0))
        throw std::invalid_argument("pagerank: damping must lie in [0,1)");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("pagerank: epsilon must be positive");
    const node n = g.n();
    std::vector<double> pi(n, 1.0 / n), next(n, 0.0);
    const uint64_t max_iter = 100000;
    for (uint64_t iter = 0; iter < max_iter; ++iter) {
        double dangling = 0.0;
        for (node v = 0; v < n; ++v)
            if (g.degree(v) == 0)
                dangling += pi[v];
        const double base = (1.0 - damping) / n + damping * dangling / n;
#pragma omp parallel for schedule(static)
        for (node w = 0; w < n; ++w) {
            double in_flow = 0.0;
            for (const node v : g.neighbors(w))
                in_flow += pi[v] / g.degree(v);
            next[w] = base + damping * in_flow;
        }
        double diff = 0.0;
        for (node v = 0; v < n; ++v)
            diff += std::abs(next[v] - pi[v]);
        std::swap(pi, next);
        if (diff < epsilon) {
            NodeScores out;
            out.info = {"pagerank", damping, false, 0, 0};
            out.values = std::move(pi);
            return out;
        }
    }
    throw std::runtime_error("pagerank: no convergence within iteration limit");
}

NodeScores degree_centrality(const Graph &g) {
    NodeScores out;
    out.info = {"degree", 0.0, false, 0, 0};
    out.values.resize(g.n());
    for (node v = 0; v < g.n(); ++v)
        out.values[v] = static_cast<double>(g.degree(v));
    return out;
}

MeasureSpec parse_measure(const std::string &text) {
    MeasureSpec spec;
    std::string head = text;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        head = text.substr(0, colon);
        const std::string tail = text.substr(colon + 1);
        try {
            size_t used = 0;
            spec.alpha = std::stod(tail, &used);
            if (used != tail.size())
                throw std::invalid_argument(tail);
        } catch (const std::exception &) {
            throw std::invalid_argument("measure '" + text + "': bad alpha suffix");
        }
        if (!(spec.alpha > 0.0) || !(spec.alpha < 1.0))
            throw std::invalid_argument("measure '" + text + "': alpha must lie in (0,1)");
    }
    if (head == "acf-tr") {
        spec.kind = "acf";
        spec.truncated = true;
    } else if (head == "degree" || head == "pagerank" || head == "closeness" ||
               head == "betweenness" || head == "cf" || head == "acf") {
        spec.kind = head;
        if (colon != std::string::npos && head != "acf")
            throw std::invalid_argument("measure '" + text + "': only acf takes an alpha suffix");
    } else {
        throw std::invalid_argument("unknown measure '" + text + "'");
    }
    return spec;
}

MeasureResult compute_measure(const Graph &g, const MeasureSpec &spec,
                              const MeasureParams &params) {
    MeasureResult out;
    if (spec.kind == "degree") {
        out.nodes = degree_centrality(g);
    } else if (spec.kind == "pagerank") {
        out.nodes = pagerank(g);
    } else if (spec.kind == "closeness") {
        out.nodes = closeness(g);
    } else if (spec.kind == "betweenness") {
        auto [edges, nodes] = shortest_path_betweenness(g);
        out.edges = std::move(edges);
        out.nodes = std::move(nodes);
    } else if (spec.kind == "cf") {
        auto [edges, nodes] = cf_betweenness_baseline(g, params.exact_opts.dense_limit);
        out.edges = std::move(edges);
        out.nodes = std::move(nodes);
    } else if (spec.kind == "acf") {
        const Alpha alpha(spec.effective_alpha());
        if (params.exact) {
            auto [edges, nodes] = alpha_cf_exact(g, alpha, spec.truncated, params.exact_opts);
            out.edges = std::move(edges);
            out.nodes = std::move(nodes);
        } else {
            SampleOptions opts;
            opts.pairs = params.pairs;
            opts.truncated = spec.truncated;
            opts.seed = params.seed;
            opts.cache = params.cache;
            auto [edges, nodes] = alpha_cf_sampled(g, alpha, opts, params.solver);
            out.edges = std::move(edges);
            out.nodes = std::move(nodes);
        }
    } else {
        throw std::invalid_argument("unknown measure kind '" + spec.kind + "'");
    }
    return out;
}

} // namespace acf
