#ifndef ACF_CSV_HPP
#define ACF_CSV_HPP

#include "acf/analysis.hpp"
#include "acf/centrality.hpp"
#include "acf/graph.hpp"
#include "acf/stats.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace acf {

/**
 * '#'-prefixed metadata header echoed at the top of every CSV so a run can be
 * reproduced from its output. The timestamp line can be switched off for
 * byte-identical reruns.
 */
struct CsvMeta {
    std::vector<std::pair<std::string, std::string>> fields;
    bool timestamp = true;

    void add(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
    }
};

/** Shortest round-trippable decimal rendering ("%.17g" pruned). */
std::string format_double(double x);

void write_metadata(std::ostream &out, const CsvMeta &meta);

/** Single row: n,m,mean_degree,diameter,clustering,mean_distance. */
void write_stats_csv(std::ostream &out, const GraphStats &stats, const CsvMeta &meta);

/** Rows u,v,score (plus a stderr column in sampled mode). */
void write_edge_scores_csv(std::ostream &out, const Graph &g, const EdgeScores &scores,
                           const CsvMeta &meta);

/** Rows node,score. */
void write_node_scores_csv(std::ostream &out, const NodeScores &scores, const CsvMeta &meta);

/** Measure-name header row and column around the tau matrix. */
void write_correlation_csv(std::ostream &out, const CorrelationMatrix &matrix,
                           const CsvMeta &meta);

/** Rows threshold,count, plot-ready for log-linear axes. */
void write_ccdf_csv(std::ostream &out, const CCDF &dist, const CsvMeta &meta);

/** Rows fraction,inv_avg_dist,lcc_size. */
void write_trace_csv(std::ostream &out, const RemovalTrace &trace, const CsvMeta &meta);

} // namespace acf

#endif
