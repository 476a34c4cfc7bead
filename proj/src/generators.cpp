#include "acf/generators.hpp"

#include "acf/rng.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace acf {

namespace {

inline uint64_t pack_edge(node v, node w) {
    if (v > w)
        std::swap(v, w);
    return (static_cast<uint64_t>(v) << 32) | w;
}

} // namespace

Graph generate_watts_strogatz(node n, node k, double p, uint64_t seed) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("watts_strogatz: k must be even and >= 2");
    if (n <= k)
        throw std::invalid_argument("watts_strogatz: need n > k");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("watts_strogatz: p must be in [0,1]");

    Rng rng = Rng::derive(seed, 0x77730001ULL, n, k);
    std::unordered_set<uint64_t> present;
    present.reserve(static_cast<size_t>(n) * k);
    for (node j = 1; j <= k / 2; ++j)
        for (node v = 0; v < n; ++v)
            present.insert(pack_edge(v, (v + j) % n));

    // Rewire ring distance by ring distance, as in the original model: keep
    // endpoint v, replace v+j by a uniform non-degenerate target w.p. p.
    for (node j = 1; j <= k / 2; ++j) {
        for (node v = 0; v < n; ++v) {
            const node w = (v + j) % n;
            if (!rng.bernoulli(p))
                continue;
            const uint64_t old_key = pack_edge(v, w);
            if (!present.count(old_key))
                continue; // already rewired away by an earlier step
            // A fresh target exists whenever degree(v) < n-1; the lattice
            // guarantees spare targets since k < n. Rejection terminates.
            for (;;) {
                const node t = static_cast<node>(rng.next_below(n));
                if (t == v)
                    continue;
                const uint64_t new_key = pack_edge(v, t);
                if (present.count(new_key))
                    continue;
                present.erase(old_key);
                present.insert(new_key);
                break;
            }
        }
    }

    std::vector<Edge> edges;
    edges.reserve(present.size());
    for (const uint64_t key : present)
        edges.emplace_back(static_cast<node>(key >> 32), static_cast<node>(key & 0xffffffffu));
    return Graph(n, std::move(edges));
}

Graph generate_erdos_renyi(node n, double p, uint64_t seed) {
    if (n == 0)
        throw std::invalid_argument("erdos_renyi: need n >= 1");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("erdos_renyi: p must be in [0,1]");

    std::vector<Edge> edges;
    if (p >= 1.0) {
        for (node v = 0; v < n; ++v)
            for (node w = v + 1; w < n; ++w)
                edges.emplace_back(v, w);
        return Graph(n, std::move(edges));
    }
    if (p > 0.0) {
        // Batagelj-Brandes geometric skipping over the lower-triangular pair
        // enumeration.
        Rng rng = Rng::derive(seed, 0x65720001ULL, n);
        const double log1mp = std::log1p(-p);
        int64_t v = 1, w = -1;
        while (v < static_cast<int64_t>(n)) {
            const double r = 1.0 - rng.next_double(); // (0,1]
            w += 1 + static_cast<int64_t>(std::floor(std::log(r) / log1mp));
            while (w >= v && v < static_cast<int64_t>(n)) {
                w -= v;
                ++v;
            }
            if (v < static_cast<int64_t>(n))
                edges.emplace_back(static_cast<node>(w), static_cast<node>(v));
        }
    }
    return Graph(n, std::move(edges));
}

Graph generate_barabasi_albert(node n, node m0, uint64_t seed) {
    if (m0 < 1 || m0 >= n)
        throw std::invalid_argument("barabasi_albert: need 1 <= m0 < n");

    Rng rng = Rng::derive(seed, 0x62610001ULL, n, m0);
    // Attachment endpoints repeated by degree; sampling an index uniformly
    // realizes preferential attachment.
    std::vector<node> repeated;
    repeated.reserve(2ull * m0 * (n - m0));
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(m0) * (n - m0));

    std::vector<node> targets(m0);
    for (node i = 0; i < m0; ++i)
        targets[i] = i;
    for (node source = m0; source < n; ++source) {
        for (const node t : targets) {
            edges.emplace_back(std::min(source, t), std::max(source, t));
            repeated.push_back(t);
            repeated.push_back(source);
        }
        if (source + 1 == n)
            break;
        // Uniform distinct m0-subset of the repeated-endpoints pool.
        std::set<node> chosen;
        while (chosen.size() < m0)
            chosen.insert(repeated[rng.next_below(repeated.size())]);
        targets.assign(chosen.begin(), chosen.end());
    }
    return Graph(n, std::move(edges));
}

} // namespace acf
