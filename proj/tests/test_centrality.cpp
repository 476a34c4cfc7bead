#include "acf/analysis.hpp"
#include "acf/centrality.hpp"
#include "acf/generators.hpp"
#include "acf/graph.hpp"
#include "acf/solver.hpp"
#include "acf/traversal.hpp"

#include "doctest.h"

#include <cmath>
#include <queue>
#include <stdexcept>

using namespace acf;

namespace {

Graph k2() { return Graph(2, {{0, 1}}); }
Graph p3() { return Graph(3, {{0, 1}, {1, 2}}); }
Graph star4() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}}); }
Graph cycle6() { return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}); }

/**
 * Brute-force reference: average absolute edge voltage drop over source/sink
 * pairs, each pair solved independently with the grounded system. Shares no
 * code path with the batched estimator beyond the factorization itself.
 * Truncation drops the pairs sourced at either endpoint of the edge and
 * renormalizes by the (n-1)(n-2) pairs that remain.
 */
std::vector<double> brute_edge_scores(const Graph &g, Alpha alpha, bool truncated) {
    const node n = g.n();
    std::vector<double> sums(g.m(), 0.0);
    uint64_t pairs = 0;
    for (node s = 0; s < n; ++s) {
        for (node t = 0; t < n; ++t) {
            if (s == t)
                continue;
            const auto phi = solve_kirchhoff_direct(g, alpha, s, t);
            ++pairs;
            for (edgeid e = 0; e < g.m(); ++e) {
                const auto [v, w] = g.edges()[e];
                if (truncated && (s == v || s == w))
                    continue;
                sums[e] += std::abs(phi[v] - phi[w]);
            }
        }
    }
    const double divisor = truncated
                               ? static_cast<double>(n - 1) * static_cast<double>(n - 2)
                               : static_cast<double>(pairs);
    for (double &x : sums)
        x /= divisor;
    return sums;
}

/** Shortest-path counts per node from one source (independent of Brandes). */
void sp_counts(const Graph &g, node s, std::vector<uint32_t> &dist, std::vector<double> &sigma) {
    dist.assign(g.n(), unreachable);
    sigma.assign(g.n(), 0.0);
    dist[s] = 0;
    sigma[s] = 1.0;
    std::queue<node> queue;
    queue.push(s);
    while (!queue.empty()) {
        const node v = queue.front();
        queue.pop();
        for (const node w : g.neighbors(v)) {
            if (dist[w] == unreachable) {
                dist[w] = dist[v] + 1;
                queue.push(w);
            }
            if (dist[w] == dist[v] + 1)
                sigma[w] += sigma[v];
        }
    }
}

} // namespace

TEST_CASE("single edge: every unit of current crosses it") {
    const auto [edges, nodes] = alpha_cf_exact(k2(), Alpha(0.5));
    REQUIRE(edges.values.size() == 1);
    CHECK(edges.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nodes.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nodes.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    // With both endpoints excluded there are no pairs left to average over.
    const auto [tr_edges, tr_nodes] = alpha_cf_exact(k2(), Alpha(0.5), true);
    CHECK(tr_edges.values[0] == 0.0);
}

TEST_CASE("exact scores match the pair-by-pair grounded reference") {
    for (const double a : {0.5, 0.8, 0.98}) {
        for (const bool truncated : {false, true}) {
            Graph g(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
            const auto expect = brute_edge_scores(g, Alpha(a), truncated);
            const auto [edges, nodes] = alpha_cf_exact(g, Alpha(a), truncated);
            for (edgeid e = 0; e < g.m(); ++e)
                CHECK(edges.values[e] == doctest::Approx(expect[e]).epsilon(1e-10));
        }
    }
}

TEST_CASE("exact scores match the grounded reference on a random graph") {
    Graph g = generate_erdos_renyi(14, 0.3, 6);
    REQUIRE(connected_components(g).count() == 1);
    const auto expect = brute_edge_scores(g, Alpha(0.8), false);
    const auto [edges, nodes] = alpha_cf_exact(g, Alpha(0.8));
    for (edgeid e = 0; e < g.m(); ++e)
        CHECK(edges.values[e] == doctest::Approx(expect[e]).epsilon(1e-9));
}

TEST_CASE("node scores are exactly the adjacent edge sums") {
    Graph g = generate_watts_strogatz(20, 4, 0.2, 4);
    const auto [edges, nodes] = alpha_cf_exact(g, Alpha(0.9));
    for (node v = 0; v < g.n(); ++v) {
        double sum = 0.0;
        for (const edgeid e : g.incident_edges(v))
            sum += edges.values[e];
        CHECK(nodes.values[v] == sum); // same summation order, bitwise equal
    }
}

TEST_CASE("one pass yields both the plain and truncated variants") {
    Graph g = generate_erdos_renyi(12, 0.4, 2);
    const auto full = alpha_cf_exact_full(g, Alpha(0.8));
    const auto [plain_e, plain_n] = alpha_cf_exact(g, Alpha(0.8), false);
    const auto [trunc_e, trunc_n] = alpha_cf_exact(g, Alpha(0.8), true);
    CHECK(full.edges_plain.values == plain_e.values);
    CHECK(full.edges_truncated.values == trunc_e.values);
    CHECK(full.nodes_plain.values == plain_n.values);
    CHECK(full.edges_plain.info.name == "acf");
    CHECK(full.edges_truncated.info.name == "acf-tr");
}

TEST_CASE("plain edge scores stay inside the unit interval") {
    for (const uint64_t seed : {1ull, 2ull, 3ull}) {
        Graph g = generate_erdos_renyi(20, 0.3, seed);
        if (connected_components(g).count() != 1)
            continue;
        for (const double a : {0.5, 0.98}) {
            const auto [edges, nodes] = alpha_cf_exact(g, Alpha(a));
            for (const double x : edges.values) {
                CHECK(x > 0.0);
                CHECK(x <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("symmetric graphs get symmetric scores") {
    const auto [c6_edges, c6_nodes] = alpha_cf_exact(cycle6(), Alpha(0.8));
    for (edgeid e = 1; e < 6; ++e)
        CHECK(c6_edges.values[e] == doctest::Approx(c6_edges.values[0]).epsilon(1e-12));
    for (node v = 1; v < 6; ++v)
        CHECK(c6_nodes.values[v] == doctest::Approx(c6_nodes.values[0]).epsilon(1e-12));

    const auto [s4_edges, s4_nodes] = alpha_cf_exact(star4(), Alpha(0.98));
    CHECK(s4_edges.values[1] == doctest::Approx(s4_edges.values[0]).epsilon(1e-12));
    CHECK(s4_edges.values[2] == doctest::Approx(s4_edges.values[0]).epsilon(1e-12));

    const auto [p3_edges, p3_nodes] = alpha_cf_exact(p3(), Alpha(0.6));
    CHECK(p3_edges.values[0] == doctest::Approx(p3_edges.values[1]).epsilon(1e-12));
}

TEST_CASE("truncation discounts pendant edges") {
    // In a star every edge's heavy traffic is sourced at its own leaf;
    // dropping those pairs shrinks the score. At alpha=1/2 the averages come
    // out to the round figures 7/20 and 1/10.
    const auto [plain, pn] = alpha_cf_exact(star4(), Alpha(0.5), false);
    const auto [trunc, tn] = alpha_cf_exact(star4(), Alpha(0.5), true);
    for (edgeid e = 0; e < 3; ++e) {
        CHECK(plain.values[e] == doctest::Approx(0.35).epsilon(1e-12));
        CHECK(trunc.values[e] == doctest::Approx(0.10).epsilon(1e-12));
    }
    // The discount persists at the default alphas.
    for (const double a : {0.8, 0.98}) {
        const auto [pe, pe_nodes] = alpha_cf_exact(star4(), Alpha(a), false);
        const auto [te, te_nodes] = alpha_cf_exact(star4(), Alpha(a), true);
        for (edgeid e = 0; e < 3; ++e) {
            CHECK(te.values[e] < 0.66 * pe.values[e]);
            CHECK(te.values[e] > 0.0); // absorbed leakage still crosses the edge
        }
    }
}

TEST_CASE("full pair enumeration reproduces the exact scores") {
    Graph g = generate_erdos_renyi(18, 0.3, 5);
    SampleOptions opts;
    opts.enumerate_all = true;
    for (const bool truncated : {false, true}) {
        opts.truncated = truncated;
        const auto [sampled_e, sampled_n] = alpha_cf_sampled(g, Alpha(0.8), opts, {});
        const auto [exact_e, exact_n] = alpha_cf_exact(g, Alpha(0.8), truncated);
        for (edgeid e = 0; e < g.m(); ++e)
            CHECK(sampled_e.values[e] == doctest::Approx(exact_e.values[e]).epsilon(1e-12));
    }
}

TEST_CASE("sampling a single edge is exact for any pair count") {
    const auto [edges, nodes] = alpha_cf_sampled(k2(), Alpha(0.5), 10, false, 3, {});
    CHECK(edges.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(edges.stderrs[0] == 0.0);
    CHECK(edges.info.samples == 10);
}

TEST_CASE("sampled scores are deterministic per seed and converge") {
    Graph g = generate_watts_strogatz(40, 4, 0.2, 7);
    const auto [a_e, a_n] = alpha_cf_sampled(g, Alpha(0.8), 500, false, 5, {});
    const auto [b_e, b_n] = alpha_cf_sampled(g, Alpha(0.8), 500, false, 5, {});
    CHECK(a_e.values == b_e.values);
    const auto [exact_e, exact_n] = alpha_cf_exact(g, Alpha(0.8));
    const auto [big_e, big_n] = alpha_cf_sampled(g, Alpha(0.8), 20000, false, 5, {});
    for (edgeid e = 0; e < g.m(); ++e)
        CHECK(std::abs(big_e.values[e] - exact_e.values[e]) <=
              6.0 * big_e.stderrs[e] + 1e-12);
}

TEST_CASE("pair sampler never repeats an endpoint inside a pair") {
    PairSampler sampler(5, 1);
    for (int i = 0; i < 1000; ++i) {
        const auto [s, t] = sampler.next();
        CHECK(s < 5);
        CHECK(t < 5);
        CHECK(s != t);
    }
    CHECK_THROWS_AS(PairSampler(1, 1), std::invalid_argument);
}

TEST_CASE("current-flow baseline: closed forms on tiny graphs") {
    const auto [k2_edges, k2_nodes] = cf_betweenness_baseline(k2());
    CHECK(k2_edges.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    // On a tree, current flow equals shortest-path flow: both path edges
    // carry the pairs {01,10,02,20} -> 4 of 6 ordered pairs.
    const auto [p3_edges, p3_nodes] = cf_betweenness_baseline(p3());
    CHECK(p3_edges.values[0] == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(p3_edges.values[1] == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(p3_nodes.values[1] == doctest::Approx(4.0 / 3).epsilon(1e-12));
}

TEST_CASE("current-flow baseline requires a connected graph") {
    Graph g(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(cf_betweenness_baseline(g), std::runtime_error);
}

TEST_CASE("alpha near one approaches the current-flow baseline") {
    Graph g = generate_watts_strogatz(24, 4, 0.3, 8);
    const auto [cf_e, cf_n] = cf_betweenness_baseline(g);
    const auto [acf_e, acf_n] = alpha_cf_exact(g, Alpha(0.98));
    CHECK(kendall_tau(cf_n, acf_n) > 0.9);
}

TEST_CASE("shortest-path betweenness matches a pairwise path-count reference") {
    for (const uint64_t seed : {1ull, 4ull, 9ull}) {
        Graph g = generate_erdos_renyi(12, 0.35, seed);
        const node n = g.n();
        // Reference: fraction of shortest s-t paths through each edge,
        // assembled from independent forward/backward BFS counts.
        std::vector<std::vector<uint32_t>> dist(n);
        std::vector<std::vector<double>> sigma(n);
        for (node s = 0; s < n; ++s)
            sp_counts(g, s, dist[s], sigma[s]);
        std::vector<double> expect(g.m(), 0.0);
        for (node s = 0; s < n; ++s) {
            for (node t = 0; t < n; ++t) {
                if (s == t || dist[s][t] == unreachable)
                    continue;
                for (edgeid e = 0; e < g.m(); ++e) {
                    const auto [v, w] = g.edges()[e];
                    for (const auto [a, b] : {std::pair{v, w}, std::pair{w, v}}) {
                        if (dist[s][a] != unreachable && dist[t][b] != unreachable &&
                            dist[s][a] + 1 + dist[t][b] == dist[s][t])
                            expect[e] += sigma[s][a] * sigma[t][b] / sigma[s][t];
                    }
                }
            }
        }
        const double scale = static_cast<double>(n) * (n - 1);
        const auto [edges, nodes] = shortest_path_betweenness(g);
        for (edgeid e = 0; e < g.m(); ++e)
            CHECK(edges.values[e] == doctest::Approx(expect[e] / scale).epsilon(1e-10));
    }
}

TEST_CASE("shortest-path betweenness closed forms") {
    const auto [k2_edges, k2_nodes] = shortest_path_betweenness(k2());
    CHECK(k2_edges.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    const auto [edges, nodes] = shortest_path_betweenness(p3());
    CHECK(edges.values[0] == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(nodes.values[1] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(nodes.values[0] == doctest::Approx(0.0));
}

TEST_CASE("dolphin top brokers by shortest-path betweenness") {
    const auto [g, labels] = load_edge_list_file(std::string(ACF_DATA_DIR) + "/dolphins.txt");
    const auto [edges, nodes] = shortest_path_betweenness(g);
    std::vector<node> order(g.n());
    for (node v = 0; v < g.n(); ++v)
        order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](node a, node b) { return nodes.values[a] > nodes.values[b]; });
    // The two well-known brokers of this network, identified by their labels
    // in the source data (internal ids follow first-seen order).
    CHECK(order[0] == labels.id_of("36"));
    CHECK(order[1] == labels.id_of("1"));
}

TEST_CASE("closeness closed forms and component handling") {
    const auto scores = closeness(p3());
    CHECK(scores.values[0] == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(scores.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scores.values[2] == doctest::Approx(2.0 / 3).epsilon(1e-12));
    // Complete graph: everyone at distance one.
    Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    for (const double x : closeness(k4).values)
        CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
    // Disconnected: per-component scores, isolated nodes at zero.
    Graph g(3, {{0, 1}});
    const auto part = closeness(g);
    CHECK(part.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(part.values[2] == 0.0);
}

TEST_CASE("pagerank: uniform on regular graphs, sums to one") {
    const auto c6 = pagerank(cycle6());
    double total = 0.0;
    for (const double x : c6.values) {
        CHECK(x == doctest::Approx(1.0 / 6).epsilon(1e-9));
        total += x;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    const auto two = pagerank(k2());
    CHECK(two.values[0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("pagerank satisfies its own fixed-point equation") {
    Graph g = generate_barabasi_albert(50, 3, 13);
    const double damping = 0.85;
    const auto pr = pagerank(g, damping);
    for (node v = 0; v < g.n(); ++v) {
        double inflow = 0.0;
        for (const node u : g.neighbors(v))
            inflow += pr.values[u] / g.degree(u);
        const double expect = (1.0 - damping) / g.n() + damping * inflow;
        CHECK(pr.values[v] == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("degree centrality is the raw degree sequence") {
    const auto scores = degree_centrality(star4());
    CHECK(scores.values[0] == 3.0);
    CHECK(scores.values[1] == 1.0);
    CHECK(scores.values[3] == 1.0);
}

TEST_CASE("measure parsing: names, alpha suffixes, defaults") {
    MeasureSpec spec = parse_measure("acf");
    CHECK(spec.kind == "acf");
    CHECK_FALSE(spec.truncated);
    CHECK(spec.effective_alpha() == doctest::Approx(0.98));

    spec = parse_measure("acf:0.5");
    CHECK(spec.effective_alpha() == doctest::Approx(0.5));

    spec = parse_measure("acf-tr");
    CHECK(spec.kind == "acf");
    CHECK(spec.truncated);
    CHECK(spec.effective_alpha() == doctest::Approx(0.8));

    spec = parse_measure("acf-tr:0.9");
    CHECK(spec.truncated);
    CHECK(spec.effective_alpha() == doctest::Approx(0.9));

    for (const char *name : {"degree", "pagerank", "closeness", "betweenness", "cf"}) {
        spec = parse_measure(name);
        CHECK(spec.kind == name);
        CHECK_FALSE(spec.truncated);
    }

    CHECK_THROWS_AS(parse_measure("acf:1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_measure("acf:zero"), std::invalid_argument);
    CHECK_THROWS_AS(parse_measure("degree:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_measure("eigenvector"), std::invalid_argument);
    CHECK_THROWS_AS(parse_measure(""), std::invalid_argument);
}

TEST_CASE("measure labels carry the alpha that was used") {
    const auto [edges, nodes] = alpha_cf_exact(k2(), Alpha(0.98));
    CHECK(measure_label(nodes.info) == "acf:0.98");
    const auto [tr_edges, tr_nodes] = alpha_cf_exact(k2(), Alpha(0.8), true);
    CHECK(measure_label(tr_nodes.info) == "acf-tr:0.8");
    CHECK(measure_label(degree_centrality(k2()).info) == "degree");
}

TEST_CASE("compute_measure dispatches to the same implementations") {
    Graph g = generate_watts_strogatz(16, 4, 0.2, 3);
    MeasureParams params;

    const auto degree = compute_measure(g, parse_measure("degree"), params);
    CHECK(degree.nodes.values == degree_centrality(g).values);
    CHECK_FALSE(degree.edges.has_value());

    const auto acf = compute_measure(g, parse_measure("acf:0.8"), params);
    const auto [exact_e, exact_n] = alpha_cf_exact(g, Alpha(0.8));
    REQUIRE(acf.edges.has_value());
    CHECK(acf.edges->values == exact_e.values);
    CHECK(acf.nodes.values == exact_n.values);

    MeasureParams sampled;
    sampled.exact = false;
    sampled.pairs = 200;
    sampled.seed = 9;
    const auto estimate = compute_measure(g, parse_measure("acf:0.8"), sampled);
    CHECK(estimate.nodes.info.samples == 200);
    CHECK(estimate.nodes.info.seed == 9);
}
