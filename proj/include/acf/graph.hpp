#ifndef ACF_GRAPH_HPP
#define ACF_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace acf {

using node = uint32_t;
using edgeid = uint32_t;
using Edge = std::pair<node, node>; // canonical: first < second

constexpr node none = std::numeric_limits<node>::max();

/**
 * Immutable simple undirected graph in compressed sparse row form.
 *
 * Nodes are dense ids 0..n-1. Edges are stored once in canonical orientation
 * (v < w), lexicographically sorted, and each CSR adjacency slot carries the
 * id of its canonical edge so per-edge accumulators can be addressed from
 * either endpoint. Immutable after construction, hence safe to share across
 * threads.
 */
class Graph {
public:
    /**
     * Build from an explicit node count and edge list. The edge list may be in
     * any order and orientation but must be free of self-loops and duplicates
     * (loaders and generators enforce that before constructing).
     *
     * @throws std::invalid_argument on n = 0, out-of-range endpoints,
     *         self-loops, or duplicate edges.
     */
    Graph(node n, std::vector<Edge> edges);

    node n() const { return n_; }
    edgeid m() const { return static_cast<edgeid>(edges_.size()); }

    node degree(node v) const { return offsets_[v + 1] - offsets_[v]; }
    node max_degree() const { return max_degree_; }

    /** Neighbors of v in ascending order. */
    std::span<const node> neighbors(node v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }

    /** Canonical edge ids parallel to neighbors(v). */
    std::span<const edgeid> incident_edges(node v) const {
        return {incident_.data() + offsets_[v], incident_.data() + offsets_[v + 1]};
    }

    /** Canonical edge list, lexicographically sorted. */
    const std::vector<Edge> &edges() const { return edges_; }

    bool has_edge(node v, node w) const;

    /** Canonical id of edge {v,w}; throws std::invalid_argument if absent. */
    edgeid edge_index(node v, node w) const;

    /** Process-unique id of this instance; used as a cache key. */
    uint64_t id() const { return id_; }

private:
    node n_;
    std::vector<Edge> edges_;
    std::vector<edgeid> offsets_;
    std::vector<node> neighbors_;
    std::vector<edgeid> incident_;
    node max_degree_ = 0;
    uint64_t id_;
};

/** Bijection between original input labels and dense node ids. */
struct RelabelMap {
    std::vector<std::string> id_to_label;
    std::unordered_map<std::string, node> label_to_id;

    node id_of(const std::string &label) const;
    const std::string &label_of(node v) const { return id_to_label.at(v); }
};

/** Counts of input lines dropped during edge-list ingestion. */
struct LoadReport {
    uint64_t self_loops = 0;
    uint64_t duplicates = 0;
};

/**
 * Parse a line-oriented edge list: two whitespace-separated labels per line,
 * '#' or '%' lines ignored. Self-loops and duplicate edges are dropped and
 * counted. Labels are densely renumbered in order of first appearance.
 *
 * @throws ParseError on a malformed line (with its line number) or when no
 *         edges survive.
 */
std::pair<Graph, RelabelMap> load_edge_list(std::istream &in, LoadReport *report = nullptr);
std::pair<Graph, RelabelMap> load_edge_list_file(const std::string &path,
                                                 LoadReport *report = nullptr);

/** Serialize with dense ids, one canonical edge per line. */
void write_edge_list(const Graph &g, std::ostream &out);

/**
 * Subgraph induced by the nodes with keep[v] = true, relabeled densely in
 * ascending original order. Returns the graph and the kept originals
 * (new id -> old id). At least one node must be kept.
 */
std::pair<Graph, std::vector<node>> induced_subgraph(const Graph &g,
                                                     const std::vector<bool> &keep);

} // namespace acf

#endif
