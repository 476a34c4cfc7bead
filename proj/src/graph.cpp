#include "acf/graph.hpp"

#include "acf/errors.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

namespace acf {

namespace {
std::atomic<uint64_t> next_graph_id{1};
}

Graph::Graph(node n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ == 0)
        throw std::invalid_argument("Graph: node count must be positive");
    for (auto &[v, w] : edges_) {
        if (v >= n_ || w >= n_)
            throw std::invalid_argument("Graph: edge endpoint out of range");
        if (v == w)
            throw std::invalid_argument("Graph: self-loop not allowed");
        if (v > w)
            std::swap(v, w);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("Graph: duplicate edge not allowed");

    std::vector<node> deg(n_, 0);
    for (const auto &[v, w] : edges_) {
        ++deg[v];
        ++deg[w];
    }
    offsets_.assign(n_ + 1, 0);
    for (node v = 0; v < n_; ++v) {
        offsets_[v + 1] = offsets_[v] + deg[v];
        max_degree_ = std::max(max_degree_, deg[v]);
    }
    neighbors_.resize(offsets_[n_]);
    incident_.resize(offsets_[n_]);
    std::vector<edgeid> cursor(offsets_.begin(), offsets_.end() - 1);
    for (edgeid e = 0; e < edges_.size(); ++e) {
        const auto [v, w] = edges_[e];
        neighbors_[cursor[v]] = w;
        incident_[cursor[v]++] = e;
        neighbors_[cursor[w]] = v;
        incident_[cursor[w]++] = e;
    }
    // Edges are lex-sorted, so rows v ended up sorted except for the w-side
    // entries; restore per-row order jointly with the incident ids.
    for (node v = 0; v < n_; ++v) {
        const auto begin = offsets_[v], end = offsets_[v + 1];
        std::vector<std::pair<node, edgeid>> row;
        row.reserve(end - begin);
        for (edgeid i = begin; i < end; ++i)
            row.emplace_back(neighbors_[i], incident_[i]);
        std::sort(row.begin(), row.end());
        for (edgeid i = begin; i < end; ++i) {
            neighbors_[i] = row[i - begin].first;
            incident_[i] = row[i - begin].second;
        }
    }
    id_ = next_graph_id.fetch_add(1, std::memory_order_relaxed);
}

bool Graph::has_edge(node v, node w) const {
    if (v >= n_ || w >= n_ || v == w)
        return false;
    if (degree(v) > degree(w))
        std::swap(v, w);
    const auto nb = neighbors(v);
    return std::binary_search(nb.begin(), nb.end(), w);
}

edgeid Graph::edge_index(node v, node w) const {
    if (v < n_ && w < n_ && v != w) {
        const auto nb = neighbors(v);
        const auto it = std::lower_bound(nb.begin(), nb.end(), w);
        if (it != nb.end() && *it == w)
            return incident_edges(v)[static_cast<size_t>(it - nb.begin())];
    }
    throw std::invalid_argument("Graph: edge not present");
}

node RelabelMap::id_of(const std::string &label) const {
    const auto it = label_to_id.find(label);
    if (it == label_to_id.end())
        throw std::invalid_argument("RelabelMap: unknown label '" + label + "'");
    return it->second;
}

std::pair<Graph, RelabelMap> load_edge_list(std::istream &in, LoadReport *report) {
    RelabelMap map;
    std::vector<Edge> edges;
    LoadReport local;
    std::string line;
    uint64_t lineno = 0;

    const auto intern = [&map](const std::string &label) -> node {
        const auto it = map.label_to_id.find(label);
        if (it != map.label_to_id.end())
            return it->second;
        const node id = static_cast<node>(map.id_to_label.size());
        map.id_to_label.push_back(label);
        map.label_to_id.emplace(label, id);
        return id;
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream tokens(line);
        std::string a, b, extra;
        if (!(tokens >> a))
            continue; // blank line
        if (a[0] == '#' || a[0] == '%')
            continue;
        if (!(tokens >> b) || (tokens >> extra))
            throw ParseError("edge list line " + std::to_string(lineno) +
                             ": expected exactly two labels");
        const node v = intern(a), w = intern(b);
        if (v == w) {
            ++local.self_loops;
            continue;
        }
        edges.emplace_back(std::min(v, w), std::max(v, w));
    }

    std::sort(edges.begin(), edges.end());
    const auto dup_end = std::unique(edges.begin(), edges.end());
    local.duplicates = static_cast<uint64_t>(edges.end() - dup_end);
    edges.erase(dup_end, edges.end());

    if (map.id_to_label.empty())
        throw ParseError("edge list: no edges found in input");
    if (report)
        *report = local;
    return {Graph(static_cast<node>(map.id_to_label.size()), std::move(edges)), std::move(map)};
}

std::pair<Graph, RelabelMap> load_edge_list_file(const std::string &path, LoadReport *report) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open edge list file: " + path);
    return load_edge_list(in, report);
}

void write_edge_list(const Graph &g, std::ostream &out) {
    for (const auto &[v, w] : g.edges())
        out << v << ' ' << w << '\n';
}

std::pair<Graph, std::vector<node>> induced_subgraph(const Graph &g,
                                                     const std::vector<bool> &keep) {
    if (keep.size() != g.n())
        throw std::invalid_argument("induced_subgraph: keep mask size mismatch");
    std::vector<node> old_of;
    std::vector<node> new_of(g.n(), none);
    for (node v = 0; v < g.n(); ++v) {
        if (keep[v]) {
            new_of[v] = static_cast<node>(old_of.size());
            old_of.push_back(v);
        }
    }
    if (old_of.empty())
        throw std::invalid_argument("induced_subgraph: at least one node must be kept");
    std::vector<Edge> edges;
    for (const auto &[v, w] : g.edges())
        if (keep[v] && keep[w])
            edges.emplace_back(new_of[v], new_of[w]);
    return {Graph(static_cast<node>(old_of.size()), std::move(edges)), std::move(old_of)};
}

} // namespace acf
