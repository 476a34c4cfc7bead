#include "acf/analysis.hpp"
#include "acf/centrality.hpp"
#include "acf/generators.hpp"
#include "acf/graph.hpp"
#include "acf/rng.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace acf;

namespace {

/** O(n^2) reference tau-b, straight from the concordant/discordant counts. */
double tau_quadratic(const std::vector<double> &a, const std::vector<double> &b) {
    const size_t n = a.size();
    int64_t concordant = 0, discordant = 0;
    uint64_t ties_a = 0, ties_b = 0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            const double da = a[i] - a[j];
            const double db = b[i] - b[j];
            if (da == 0 && db == 0) {
                ++ties_a;
                ++ties_b;
            } else if (da == 0) {
                ++ties_a;
            } else if (db == 0) {
                ++ties_b;
            } else if ((da > 0) == (db > 0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const double total = static_cast<double>(n) * (n - 1) / 2;
    return (concordant - discordant) /
           std::sqrt((total - ties_a) * (total - ties_b));
}

} // namespace

TEST_CASE("kendall tau closed forms") {
    CHECK(kendall_tau({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
    CHECK(kendall_tau({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(kendall_tau({1, 2, 3}, {1, 3, 2}) == doctest::Approx(1.0 / 3));
    // Monotone transforms leave tau unchanged.
    CHECK(kendall_tau({1, 2, 3, 4}, {1, 4, 9, 16}) == doctest::Approx(1.0));
}

TEST_CASE("kendall tau matches the quadratic reference, ties included") {
    Rng rng = Rng::derive(77, 1, 2);
    for (int round = 0; round < 10; ++round) {
        const size_t n = 50 + 45 * round;
        std::vector<double> a(n), b(n);
        for (size_t i = 0; i < n; ++i) {
            // Coarse integer grids force plenty of ties.
            a[i] = static_cast<double>(rng.next_below(12));
            b[i] = static_cast<double>(rng.next_below(7)) + 0.5 * a[i];
        }
        CHECK(kendall_tau(a, b) == doctest::Approx(tau_quadratic(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("kendall tau is symmetric and bounded") {
    Rng rng = Rng::derive(78, 3, 4);
    std::vector<double> a(200), b(200);
    for (size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.next_double();
        b[i] = rng.next_double();
    }
    const double t = kendall_tau(a, b);
    CHECK(t == doctest::Approx(kendall_tau(b, a)).epsilon(1e-15));
    CHECK(t >= -1.0);
    CHECK(t <= 1.0);
}

TEST_CASE("kendall tau rejects degenerate input") {
    using vec = std::vector<double>;
    CHECK_THROWS_AS(kendall_tau(vec{1, 2}, vec{1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(kendall_tau(vec{}, vec{}), std::invalid_argument);
    CHECK_THROWS_AS(kendall_tau(vec{1, 1, 1}, vec{1, 2, 3}), std::runtime_error); // constant side
}

TEST_CASE("correlation table is symmetric with a unit diagonal") {
    Graph g = generate_watts_strogatz(30, 4, 0.2, 2);
    const std::vector<MeasureSpec> specs = {parse_measure("degree"), parse_measure("closeness"),
                                            parse_measure("acf:0.8")};
    const CorrelationMatrix matrix = correlation_table(g, specs, {});
    REQUIRE(matrix.names.size() == 3);
    CHECK(matrix.names[2] == "acf:0.8");
    for (size_t i = 0; i < 3; ++i) {
        CHECK(matrix.tau[i][i] == doctest::Approx(1.0));
        for (size_t j = 0; j < 3; ++j)
            CHECK(matrix.tau[i][j] == doctest::Approx(matrix.tau[j][i]).epsilon(1e-15));
    }
    // One-measure table degenerates to [[1]].
    const CorrelationMatrix one = correlation_table(g, {parse_measure("degree")}, {});
    CHECK(one.tau[0][0] == doctest::Approx(1.0));
}

TEST_CASE("ccdf counts strictly-greater mass at each threshold") {
    const CCDF dist = ccdf({1, 1, 2});
    REQUIRE(dist.thresholds.size() == 3);
    CHECK(dist.thresholds == std::vector<double>{0, 1, 2});
    CHECK(dist.counts == std::vector<uint64_t>{3, 1, 0});
}

TEST_CASE("ccdf properties: monotone counts, full mass above zero threshold") {
    Rng rng = Rng::derive(79, 5, 6);
    std::vector<double> values(500);
    for (double &x : values)
        x = rng.next_double() * 10;
    const CCDF dist = ccdf(values);
    CHECK(std::is_sorted(dist.thresholds.begin(), dist.thresholds.end()));
    for (size_t i = 1; i < dist.counts.size(); ++i)
        CHECK(dist.counts[i] <= dist.counts[i - 1]);
    CHECK(dist.thresholds.front() == 0.0);
    CHECK(dist.counts.front() == values.size()); // all sampled values exceed 0
    CHECK(dist.counts.back() == 0);              // nothing exceeds the maximum
    CHECK_THROWS_AS(ccdf({}), std::invalid_argument);
}

TEST_CASE("inverse average distance closed forms") {
    Graph k3(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(inverse_average_distance(k3) == doctest::Approx(1.0).epsilon(1e-12));
    Graph p3(3, {{0, 1}, {1, 2}});
    // Ordered pairs: four at distance 1, two at distance 2 -> (4 + 1)/6.
    CHECK(inverse_average_distance(p3) == doctest::Approx(5.0 / 6).epsilon(1e-12));
    // Unreachable pairs contribute zero.
    Graph split(4, {{0, 1}, {2, 3}});
    CHECK(inverse_average_distance(split) == doctest::Approx(4.0 / 12).epsilon(1e-12));
    Graph isolated(2, {});
    CHECK(inverse_average_distance(isolated) == 0.0);
    CHECK_THROWS_AS(inverse_average_distance(Graph(1, {})), std::invalid_argument);
}

TEST_CASE("static sweep dismantles a star from the hub") {
    Graph s5(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    const auto [edges, nodes] = alpha_cf_exact(s5, Alpha(0.8));
    const RemovalTrace trace = vulnerability_sweep(s5, nodes, 1);
    CHECK(trace.strategy == "acf:0.8");
    REQUIRE(trace.fraction.size() == 5);
    CHECK(trace.fraction[0] == 0.0);
    CHECK(trace.lcc_size[0] == 6);
    CHECK(trace.inv_avg_distance[0] ==
          doctest::Approx(inverse_average_distance(s5)).epsilon(1e-12));
    // The hub scores highest and goes first; everything shatters.
    CHECK(trace.lcc_size[1] == 1);
    CHECK(trace.inv_avg_distance[1] == 0.0);
    for (size_t i = 1; i < trace.lcc_size.size(); ++i)
        CHECK(trace.lcc_size[i] <= trace.lcc_size[i - 1]);
}

TEST_CASE("static sweep is monotone in the largest component") {
    Graph g = generate_watts_strogatz(80, 4, 0.2, 6);
    for (const char *measure : {"degree", "betweenness", "acf:0.8"}) {
        const auto result = compute_measure(g, parse_measure(measure), {});
        const RemovalTrace trace = vulnerability_sweep(g, result.nodes, 1);
        REQUIRE(!trace.fraction.empty());
        CHECK(trace.fraction[0] == 0.0);
        CHECK(trace.lcc_size[0] == 80);
        for (size_t i = 1; i < trace.lcc_size.size(); ++i)
            CHECK(trace.lcc_size[i] <= trace.lcc_size[i - 1]);
    }
}

TEST_CASE("sweep honors the step size") {
    Graph g = generate_watts_strogatz(50, 4, 0.1, 8);
    const auto result = compute_measure(g, parse_measure("degree"), {});
    const RemovalTrace coarse = vulnerability_sweep(g, result.nodes, 10);
    REQUIRE(coarse.fraction.size() >= 2);
    CHECK(coarse.fraction[1] == doctest::Approx(0.2));
    const RemovalTrace fine = vulnerability_sweep(g, result.nodes, 1);
    CHECK(fine.fraction.size() > coarse.fraction.size());
}

TEST_CASE("sweep validates its inputs") {
    Graph g(3, {{0, 1}, {1, 2}});
    NodeScores wrong;
    wrong.values = {1.0, 2.0}; // size mismatch
    CHECK_THROWS_AS(vulnerability_sweep(g, wrong, 1), std::invalid_argument);
    const auto scores = degree_centrality(Graph(1, {}));
    CHECK_THROWS_AS(vulnerability_sweep(Graph(1, {}), scores, 1), std::invalid_argument);
}

TEST_CASE("recomputed sweep stays total as the graph fragments") {
    Graph g = generate_watts_strogatz(40, 4, 0.3, 12);
    const RemovalTrace trace =
        vulnerability_sweep_recompute(g, parse_measure("acf:0.8"), {}, 1);
    CHECK(trace.strategy == "acf:0.8+recompute");
    CHECK(trace.fraction[0] == 0.0);
    CHECK(trace.lcc_size[0] == 40);
    // Unlike the static sweep there is no early stop: the trace walks the
    // graph down to two nodes even when the residual is disconnected.
    for (size_t i = 1; i < trace.lcc_size.size(); ++i)
        CHECK(trace.lcc_size[i] <= trace.lcc_size[i - 1]);
    REQUIRE(trace.fraction.size() >= 38);

    // The current-flow baseline also survives fragmentation.
    Graph tiny = generate_watts_strogatz(16, 2, 0.2, 3);
    const RemovalTrace cf_trace = vulnerability_sweep_recompute(tiny, parse_measure("cf"), {}, 1);
    for (size_t i = 1; i < cf_trace.lcc_size.size(); ++i)
        CHECK(cf_trace.lcc_size[i] <= cf_trace.lcc_size[i - 1]);
}

TEST_CASE("recomputed and static sweeps agree while the ranking is stable") {
    // Removing the unambiguous hub first is the same under either policy.
    Graph s5(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    const auto [edges, nodes] = alpha_cf_exact(s5, Alpha(0.8));
    const RemovalTrace fixed = vulnerability_sweep(s5, nodes, 1);
    const RemovalTrace fresh = vulnerability_sweep_recompute(s5, parse_measure("acf:0.8"), {}, 1);
    CHECK(fixed.lcc_size[1] == fresh.lcc_size[1]);
    CHECK(fixed.inv_avg_distance[1] == doctest::Approx(fresh.inv_avg_distance[1]));
}
