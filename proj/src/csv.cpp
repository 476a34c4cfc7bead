#include "acf/csv.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <ostream>

namespace acf {

std::string format_double(double x) {
    char buf[64];
    for (const int precision : {15, 16, 17}) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x)
            break;
    }
    return buf;
}

void write_metadata(std::ostream &out, const CsvMeta &meta) {
    for (const auto &[key, value] : meta.fields)
        out << "# " << key << ": " << value << '\n';
    if (meta.timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        out << "# generated: " << buf << '\n';
    }
}

void write_stats_csv(std::ostream &out, const GraphStats &stats, const CsvMeta &meta) {
    write_metadata(out, meta);
    out << "n,m,mean_degree,diameter,clustering,mean_distance\n";
    out << stats.n << ',' << stats.m << ',' << format_double(stats.mean_degree) << ','
        << stats.diameter << ',' << format_double(stats.clustering) << ','
        << format_double(stats.mean_distance) << '\n';
}

void write_edge_scores_csv(std::ostream &out, const Graph &g, const EdgeScores &scores,
                           const CsvMeta &meta) {
    write_metadata(out, meta);
    const bool with_stderr = !scores.stderrs.empty();
    out << (with_stderr ? "u,v,score,stderr\n" : "u,v,score\n");
    for (edgeid e = 0; e < g.m(); ++e) {
        const auto &[v, w] = g.edges()[e];
        out << v << ',' << w << ',' << format_double(scores.values[e]);
        if (with_stderr)
            out << ',' << format_double(scores.stderrs[e]);
        out << '\n';
    }
}

void write_node_scores_csv(std::ostream &out, const NodeScores &scores, const CsvMeta &meta) {
    write_metadata(out, meta);
    out << "node,score\n";
    for (size_t v = 0; v < scores.values.size(); ++v)
        out << v << ',' << format_double(scores.values[v]) << '\n';
}

void write_correlation_csv(std::ostream &out, const CorrelationMatrix &matrix,
                           const CsvMeta &meta) {
    write_metadata(out, meta);
    out << "measure";
    for (const auto &name : matrix.names)
        out << ',' << name;
    out << '\n';
    for (size_t i = 0; i < matrix.names.size(); ++i) {
        out << matrix.names[i];
        for (const double tau : matrix.tau[i])
            out << ',' << format_double(tau);
        out << '\n';
    }
}

void write_ccdf_csv(std::ostream &out, const CCDF &dist, const CsvMeta &meta) {
    write_metadata(out, meta);
    out << "threshold,count\n";
    for (size_t i = 0; i < dist.thresholds.size(); ++i)
        out << format_double(dist.thresholds[i]) << ',' << dist.counts[i] << '\n';
}

void write_trace_csv(std::ostream &out, const RemovalTrace &trace, const CsvMeta &meta) {
    write_metadata(out, meta);
    out << "fraction,inv_avg_dist,lcc_size\n";
    for (size_t i = 0; i < trace.fraction.size(); ++i)
        out << format_double(trace.fraction[i]) << ','
            << format_double(trace.inv_avg_distance[i]) << ',' << trace.lcc_size[i] << '\n';
}

} // namespace acf
