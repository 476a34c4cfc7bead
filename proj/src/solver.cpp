#include "acf/solver.hpp"

#include "acf/errors.hpp"
#include "acf/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

namespace acf {

namespace {

constexpr size_t kPowerLanes = 64; // sources advanced together per block

void require_no_isolated(const Graph &g) {
    for (node v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0)
            throw std::runtime_error("solver: node " + std::to_string(v) +
                                     " is isolated; [D - alpha*A] is singular");
}

void require_dense_ok(const Graph &g, node limit, const char *who) {
    if (g.n() > limit)
        throw std::runtime_error(std::string(who) + ": n = " + std::to_string(g.n()) +
                                 " exceeds the dense-solve guard (" + std::to_string(limit) +
                                 "); use the power or montecarlo method");
}

/** System matrix D - alpha*A as a dense Eigen matrix. */
Eigen::MatrixXd system_matrix(const Graph &g, double alpha) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (node v = 0; v < g.n(); ++v)
        M(v, v) = static_cast<double>(g.degree(v));
    for (const auto &[v, w] : g.edges()) {
        M(v, w) = -alpha;
        M(w, v) = -alpha;
    }
    return M;
}

Eigen::LLT<Eigen::MatrixXd> factorize(const Graph &g, double alpha, const char *who) {
    Eigen::LLT<Eigen::MatrixXd> llt(system_matrix(g, alpha));
    if (llt.info() != Eigen::Success)
        throw std::runtime_error(std::string(who) + ": Cholesky factorization failed");
    return llt;
}

std::vector<PotentialRow> solve_rows_direct(const Graph &g, Alpha alpha,
                                            std::span<const node> sources,
                                            const SolverConfig &cfg) {
    require_dense_ok(g, cfg.dense_limit, "direct solver");
    const auto llt = factorize(g, alpha.value, "direct solver");
    std::vector<PotentialRow> rows;
    rows.reserve(sources.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(g.n());
    for (const node s : sources) {
        rhs.setZero();
        rhs(s) = 1.0;
        const Eigen::VectorXd x = llt.solve(rhs);
        PotentialRow row;
        row.source = s;
        row.method = SolveMethod::direct;
        row.tolerance = std::numeric_limits<double>::epsilon() * g.n();
        row.values.assign(x.data(), x.data() + g.n());
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<PotentialRow> solve_rows_power(const Graph &g, Alpha alpha,
                                           std::span<const node> sources,
                                           const SolverConfig &cfg) {
    const uint64_t needed = power_iteration_count(alpha, cfg.epsilon);
    if (cfg.max_iterations > 0 && cfg.max_iterations < needed) {
        const double residual =
            std::pow(alpha.value, static_cast<double>(cfg.max_iterations) + 1.0) /
            (1.0 - alpha.value);
        throw std::runtime_error("power solver: " + std::to_string(cfg.max_iterations) +
                                 " iterations leave residual bound " + std::to_string(residual) +
                                 " > epsilon " + std::to_string(cfg.epsilon));
    }
    const uint64_t K = needed;
    const size_t n = g.n();

    std::vector<double> inv_deg(n);
    for (node v = 0; v < n; ++v)
        inv_deg[v] = 1.0 / g.degree(v);

    std::vector<PotentialRow> rows(sources.size());
    std::vector<double> cur, nxt, acc;
    for (size_t base = 0; base < sources.size(); base += kPowerLanes) {
        const size_t B = std::min(kPowerLanes, sources.size() - base);
        cur.assign(n * B, 0.0);
        nxt.assign(n * B, 0.0);
        acc.assign(n * B, 0.0);
        for (size_t b = 0; b < B; ++b) {
            cur[static_cast<size_t>(sources[base + b]) * B + b] = 1.0;
            acc[static_cast<size_t>(sources[base + b]) * B + b] = 1.0;
        }
        for (uint64_t k = 1; k <= K; ++k) {
            // cur <- cur * invdeg (per node), nxt <- alpha * A^T cur, acc += nxt
#pragma omp parallel for schedule(static)
            for (node v = 0; v < n; ++v) {
                const double d = inv_deg[v];
                double *row = cur.data() + static_cast<size_t>(v) * B;
                for (size_t b = 0; b < B; ++b)
                    row[b] *= d;
            }
#pragma omp parallel for schedule(static)
            for (node w = 0; w < n; ++w) {
                double *out = nxt.data() + static_cast<size_t>(w) * B;
                std::fill(out, out + B, 0.0);
                for (const node v : g.neighbors(w)) {
                    const double *in = cur.data() + static_cast<size_t>(v) * B;
                    for (size_t b = 0; b < B; ++b)
                        out[b] += in[b];
                }
                double *sum = acc.data() + static_cast<size_t>(w) * B;
                for (size_t b = 0; b < B; ++b) {
                    out[b] *= alpha.value;
                    sum[b] += out[b];
                }
            }
            std::swap(cur, nxt);
        }
        for (size_t b = 0; b < B; ++b) {
            PotentialRow &row = rows[base + b];
            row.source = sources[base + b];
            row.method = SolveMethod::power;
            row.tolerance = cfg.epsilon;
            row.values.resize(n);
            for (node v = 0; v < n; ++v)
                row.values[v] = acc[static_cast<size_t>(v) * B + b] * inv_deg[v];
        }
    }
    return rows;
}

PotentialRow solve_row_montecarlo(const Graph &g, Alpha alpha, node s, const SolverConfig &cfg) {
    if (cfg.walks_per_source == 0)
        throw std::invalid_argument("montecarlo solver: walks_per_source must be >= 1");
    const size_t n = g.n();
    const uint64_t W = cfg.walks_per_source;
    std::vector<uint64_t> counts(n, 0), sqsums(n, 0);

#pragma omp parallel
    {
        std::vector<uint64_t> local_counts(n, 0), local_sq(n, 0);
        std::vector<node> path;
#pragma omp for schedule(static)
        for (int64_t walk = 0; walk < static_cast<int64_t>(W); ++walk) {
            Rng rng = Rng::derive(cfg.seed, 0x6d630001ULL, s, static_cast<uint64_t>(walk));
            path.clear();
            node v = s;
            path.push_back(v);
            while (rng.bernoulli(alpha.value)) {
                const auto nb = g.neighbors(v);
                v = nb[rng.next_below(nb.size())];
                path.push_back(v);
            }
            std::sort(path.begin(), path.end());
            for (size_t i = 0; i < path.size();) {
                size_t j = i;
                while (j < path.size() && path[j] == path[i])
                    ++j;
                const uint64_t c = j - i;
                local_counts[path[i]] += c;
                local_sq[path[i]] += c * c;
                i = j;
            }
        }
#pragma omp critical
        {
            for (size_t v = 0; v < n; ++v) {
                counts[v] += local_counts[v];
                sqsums[v] += local_sq[v];
            }
        }
    }

    PotentialRow row;
    row.source = s;
    row.method = SolveMethod::montecarlo;
    row.values.resize(n);
    double max_se = 0.0;
    for (node v = 0; v < n; ++v) {
        const double d = static_cast<double>(g.degree(v));
        const double mean = static_cast<double>(counts[v]) / W;
        row.values[v] = mean / d;
        if (W > 1) {
            const double var =
                (static_cast<double>(sqsums[v]) - W * mean * mean) / (W - 1.0);
            max_se = std::max(max_se, std::sqrt(std::max(var, 0.0) / W) / d);
        }
    }
    row.tolerance = max_se;
    return row;
}

void put_u64(std::ostream &out, uint64_t x) {
    char buf[8];
    for (int i = 0; i < 8; ++i)
        buf[i] = static_cast<char>((x >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

void put_u32(std::ostream &out, uint32_t x) {
    char buf[4];
    for (int i = 0; i < 4; ++i)
        buf[i] = static_cast<char>((x >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

void put_f64(std::ostream &out, double x) { put_u64(out, std::bit_cast<uint64_t>(x)); }

uint64_t get_u64(std::istream &in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char *>(buf), 8);
    if (!in)
        throw ParseError("potential row: truncated stream");
    uint64_t x = 0;
    for (int i = 7; i >= 0; --i)
        x = (x << 8) | buf[i];
    return x;
}

uint32_t get_u32(std::istream &in) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char *>(buf), 4);
    if (!in)
        throw ParseError("potential row: truncated stream");
    uint32_t x = 0;
    for (int i = 3; i >= 0; --i)
        x = (x << 8) | buf[i];
    return x;
}

double get_f64(std::istream &in) { return std::bit_cast<double>(get_u64(in)); }

} // namespace

Alpha::Alpha(double a) : value(a) {
    if (!(a > 0.0) || !(a < 1.0))
        throw std::invalid_argument("alpha must lie strictly inside (0,1)");
}

const char *to_string(SolveMethod m) {
    switch (m) {
    case SolveMethod::direct:
        return "direct";
    case SolveMethod::power:
        return "power";
    case SolveMethod::montecarlo:
        return "montecarlo";
    }
    return "?";
}

SolveMethod parse_method(const std::string &name) {
    if (name == "direct")
        return SolveMethod::direct;
    if (name == "power")
        return SolveMethod::power;
    if (name == "montecarlo")
        return SolveMethod::montecarlo;
    throw std::invalid_argument("unknown solver method '" + name +
                                "' (expected direct|power|montecarlo)");
}

uint64_t power_iteration_count(Alpha alpha, double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    const double target = epsilon * (1.0 - alpha.value);
    if (target >= 1.0)
        return 1;
    const double k = std::ceil(std::log(target) / std::log(alpha.value));
    return static_cast<uint64_t>(std::max(1.0, k));
}

PotentialRow solve_row(const Graph &g, Alpha alpha, node s, const SolverConfig &cfg) {
    const node src[1] = {s};
    return std::move(solve_rows(g, alpha, src, cfg).front());
}

std::vector<PotentialRow> solve_rows(const Graph &g, Alpha alpha, std::span<const node> sources,
                                     const SolverConfig &cfg) {
    for (const node s : sources)
        if (s >= g.n())
            throw std::invalid_argument("solve_rows: source out of range");
    require_no_isolated(g);
    switch (cfg.method) {
    case SolveMethod::direct:
        return solve_rows_direct(g, alpha, sources, cfg);
    case SolveMethod::power:
        return solve_rows_power(g, alpha, sources, cfg);
    case SolveMethod::montecarlo: {
        std::vector<PotentialRow> rows;
        rows.reserve(sources.size());
        for (const node s : sources)
            rows.push_back(solve_row_montecarlo(g, alpha, s, cfg));
        return rows;
    }
    }
    throw std::invalid_argument("solve_rows: unknown method");
}

double voltage_drop(const Graph &g, const PotentialRow &row_s, const PotentialRow &row_t,
                    node v, node w) {
    if (row_s.values.size() != g.n() || row_t.values.size() != g.n())
        throw std::invalid_argument("voltage_drop: rows do not match the graph");
    if (!g.has_edge(v, w))
        throw std::invalid_argument("voltage_drop: {" + std::to_string(v) + "," +
                                    std::to_string(w) + "} is not an edge");
    const double c_tt = row_t.values[row_t.source];
    if (!(c_tt > 0.0))
        throw std::runtime_error("voltage_drop: diagonal entry c_tt is not positive");
    const double ratio = row_s.values[row_t.source] / c_tt;
    return (row_s.values[v] - row_s.values[w]) + ratio * (row_t.values[w] - row_t.values[v]);
}

std::vector<double> solve_kirchhoff_direct(const Graph &g, Alpha alpha, node s, node t,
                                           node dense_limit) {
    if (s >= g.n() || t >= g.n())
        throw std::invalid_argument("solve_kirchhoff_direct: node out of range");
    if (s == t)
        throw std::invalid_argument("solve_kirchhoff_direct: source equals ground");
    require_no_isolated(g);
    require_dense_ok(g, dense_limit, "solve_kirchhoff_direct");

    const node n = g.n();
    // Dense index map with node t deleted; degrees stay those of the full
    // graph (the ground absorbs the remaining conductance).
    std::vector<node> idx(n, none);
    node next = 0;
    for (node v = 0; v < n; ++v)
        if (v != t)
            idx[v] = next++;

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n - 1, n - 1);
    for (node v = 0; v < n; ++v)
        if (v != t)
            M(idx[v], idx[v]) = static_cast<double>(g.degree(v));
    for (const auto &[v, w] : g.edges()) {
        if (v == t || w == t)
            continue;
        M(idx[v], idx[w]) = -alpha.value;
        M(idx[w], idx[v]) = -alpha.value;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n - 1);
    rhs(idx[s]) = 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("solve_kirchhoff_direct: factorization failed");
    const Eigen::VectorXd x = llt.solve(rhs);

    std::vector<double> phi(n, 0.0);
    for (node v = 0; v < n; ++v)
        if (v != t)
            phi[v] = x(idx[v]);
    return phi;
}

std::vector<double> dense_inverse(const Graph &g, Alpha alpha, node dense_limit) {
    require_no_isolated(g);
    require_dense_ok(g, dense_limit, "dense_inverse");
    const auto llt = factorize(g, alpha.value, "dense_inverse");
    const Eigen::MatrixXd C = llt.solve(Eigen::MatrixXd::Identity(g.n(), g.n()));
    std::vector<double> out(static_cast<size_t>(g.n()) * g.n());
    for (node i = 0; i < g.n(); ++i)
        for (node j = 0; j < g.n(); ++j)
            out[static_cast<size_t>(i) * g.n() + j] = C(i, j);
    return out;
}

size_t RowKeyHash::operator()(const RowKey &k) const {
    return static_cast<size_t>(mix_seed(k.graph_id, std::bit_cast<uint64_t>(k.alpha),
                                        (static_cast<uint64_t>(k.source) << 8) |
                                            static_cast<uint64_t>(k.method),
                                        std::bit_cast<uint64_t>(k.epsilon)));
}

RowCache::RowCache(size_t capacity) : capacity_(std::max<size_t>(1, capacity)) {}

std::shared_ptr<const PotentialRow> RowCache::find(const RowKey &key) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = map_.find(key);
    if (it == map_.end()) {
        ++misses_;
        return nullptr;
    }
    ++hits_;
    lru_.splice(lru_.begin(), lru_, it->second.second);
    return it->second.first;
}

void RowCache::insert(const RowKey &key, std::shared_ptr<const PotentialRow> row) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (map_.count(key))
        return;
    lru_.push_front(key);
    map_.emplace(key, std::make_pair(std::move(row), lru_.begin()));
    while (map_.size() > capacity_) {
        map_.erase(lru_.back());
        lru_.pop_back();
    }
}

size_t RowCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return map_.size();
}

std::vector<std::shared_ptr<const PotentialRow>>
rows_through_cache(const Graph &g, Alpha alpha, std::span<const node> sources,
                   const SolverConfig &cfg, RowCache *cache) {
    std::vector<std::shared_ptr<const PotentialRow>> out(sources.size());
    std::vector<size_t> missing;
    for (size_t i = 0; i < sources.size(); ++i) {
        const RowKey key{g.id(), alpha.value, sources[i], cfg.method, cfg.epsilon};
        if (cache)
            out[i] = cache->find(key);
        if (!out[i])
            missing.push_back(i);
    }
    if (missing.empty())
        return out;
    std::vector<node> batch;
    batch.reserve(missing.size());
    for (const size_t i : missing)
        batch.push_back(sources[i]);
    auto solved = solve_rows(g, alpha, batch, cfg);
    for (size_t j = 0; j < missing.size(); ++j) {
        auto ptr = std::make_shared<const PotentialRow>(std::move(solved[j]));
        if (cache)
            cache->insert(RowKey{g.id(), alpha.value, ptr->source, cfg.method, cfg.epsilon}, ptr);
        out[missing[j]] = std::move(ptr);
    }
    return out;
}

void write_potential_row(std::ostream &out, const Graph &g, Alpha alpha,
                         const PotentialRow &row, double epsilon) {
    if (row.values.size() != g.n())
        throw std::invalid_argument("write_potential_row: row does not match the graph");
    put_u64(out, g.n());
    put_f64(out, alpha.value);
    put_u64(out, row.source);
    put_u32(out, static_cast<uint32_t>(row.method));
    put_f64(out, epsilon);
    for (const double x : row.values)
        put_f64(out, x);
    if (!out)
        throw std::runtime_error("write_potential_row: write failed");
}

PotentialRow read_potential_row(std::istream &in, uint64_t *n_out, double *alpha_out,
                                double *epsilon_out) {
    const uint64_t n = get_u64(in);
    const double alpha = get_f64(in);
    const uint64_t source = get_u64(in);
    const uint32_t method = get_u32(in);
    const double epsilon = get_f64(in);
    if (method > static_cast<uint32_t>(SolveMethod::montecarlo))
        throw ParseError("potential row: unknown method tag");
    PotentialRow row;
    row.source = static_cast<node>(source);
    row.method = static_cast<SolveMethod>(method);
    row.tolerance = epsilon;
    row.values.resize(n);
    for (uint64_t v = 0; v < n; ++v)
        row.values[v] = get_f64(in);
    if (n_out)
        *n_out = n;
    if (alpha_out)
        *alpha_out = alpha;
    if (epsilon_out)
        *epsilon_out = epsilon;
    return row;
}

} // namespace acf
