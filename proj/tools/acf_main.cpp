#include "acf/analysis.hpp"
#include "acf/centrality.hpp"
#include "acf/csv.hpp"
#include "acf/errors.hpp"
#include "acf/generators.hpp"
#include "acf/graph.hpp"
#include "acf/solver.hpp"
#include "acf/stats.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace acf;

/** Knobs shared by the computing subcommands. */
struct CommonOpts {
    double alpha = 0.0; // 0 = per-measure default
    uint64_t pairs = 0; // 0 = exact mode
    double epsilon = 1e-8;
    uint64_t seed = 1;
    std::string method = "power";
    bool truncated = false;
    bool exact_flag = false;
    int threads = 0;
    bool no_timestamp = false;
    std::string out;
};

void add_solver_opts(CLI::App *cmd, CommonOpts &o) {
    cmd->add_option("--alpha", o.alpha, "Conductance alpha in (0,1); defaults to 0.98, or 0.8 when truncated")
        ->envname("ACF_ALPHA");
    cmd->add_option("--pairs", o.pairs, "Sampled source-destination pairs (enables sampled mode)")
        ->envname("ACF_PAIRS");
    cmd->add_flag("--exact", o.exact_flag, "Force the exact all-pairs computation");
    cmd->add_flag("--truncated", o.truncated, "Truncated variant: drop pairs sourced at an edge endpoint");
    cmd->add_option("--method", o.method, "Row solver: direct|power|montecarlo (sampled mode)")
        ->envname("ACF_METHOD");
    cmd->add_option("--epsilon", o.epsilon, "Absolute row tolerance for the solvers")
        ->envname("ACF_EPSILON");
}

void add_run_opts(CLI::App *cmd, CommonOpts &o) {
    cmd->add_option("--seed", o.seed, "Seed for all randomized stages")->envname("ACF_SEED");
    cmd->add_option("--threads", o.threads, "Worker thread cap (0 = hardware default)")
        ->envname("ACF_THREADS");
    cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp metadata line");
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0)
        omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int effective_threads(int threads) {
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    return 1;
#endif
}

/** Writes to --out when given, stdout otherwise. */
class Output {
public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw std::runtime_error("cannot open output file: " + path);
        }
    }

    std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

MeasureSpec build_spec(const std::string &measure, const CommonOpts &o) {
    MeasureSpec spec = parse_measure(measure);
    if (o.truncated && spec.kind == "acf")
        spec.truncated = true;
    if (spec.alpha == 0.0 && o.alpha != 0.0) {
        if (!(o.alpha > 0.0) || !(o.alpha < 1.0))
            throw std::invalid_argument("--alpha must lie strictly inside (0,1)");
        spec.alpha = o.alpha;
    }
    return spec;
}

MeasureParams build_params(const CommonOpts &o, RowCache *cache) {
    MeasureParams params;
    params.exact = o.exact_flag || o.pairs == 0;
    params.pairs = o.pairs ? o.pairs : 1000;
    params.seed = o.seed;
    params.solver.method = parse_method(o.method);
    params.solver.epsilon = o.epsilon;
    params.solver.seed = o.seed;
    params.cache = cache;
    return params;
}

CsvMeta base_meta(const std::string &command, const std::string &input, const CommonOpts &o) {
    CsvMeta meta;
    meta.timestamp = !o.no_timestamp;
    meta.add("command", command);
    if (!input.empty())
        meta.add("input", input);
    meta.add("seed", std::to_string(o.seed));
    meta.add("threads", std::to_string(effective_threads(o.threads)));
    return meta;
}

void add_measure_meta(CsvMeta &meta, const MeasureSpec &spec, const MeasureParams &params) {
    meta.add("measure", spec.kind + (spec.truncated ? " (truncated)" : ""));
    if (spec.kind == "acf")
        meta.add("alpha", format_double(spec.effective_alpha()));
    if (spec.kind == "acf" && !params.exact) {
        meta.add("mode", "sampled");
        meta.add("pairs", std::to_string(params.pairs));
        meta.add("solver", to_string(params.solver.method));
        meta.add("epsilon", format_double(params.solver.epsilon));
    } else if (spec.kind == "acf" || spec.kind == "cf" || spec.kind == "betweenness") {
        meta.add("mode", "exact");
    }
}

int run_stats(const std::string &input, const CommonOpts &o) {
    const auto [graph, labels] = load_edge_list_file(input);
    const GraphStats stats = compute_stats(graph);
    Output out(o.out);
    write_stats_csv(out.stream(), stats, base_meta("stats", input, o));
    return 0;
}

int run_generate(const std::string &model, node n, node k, double p, node m0, const CommonOpts &o) {
    Graph graph = [&] {
        if (model == "ws")
            return generate_watts_strogatz(n, k, p, o.seed);
        if (model == "er")
            return generate_erdos_renyi(n, p, o.seed);
        if (model == "ba")
            return generate_barabasi_albert(n, m0, o.seed);
        throw std::invalid_argument("unknown model '" + model + "' (expected ws|er|ba)");
    }();

    CsvMeta meta = base_meta("generate", "", o);
    meta.add("model", model);
    meta.add("nodes", std::to_string(graph.n()));
    meta.add("edges", std::to_string(graph.m()));
    if (model == "ws")
        meta.add("params", "k=" + std::to_string(k) + " p=" + format_double(p));
    else if (model == "er")
        meta.add("params", "p=" + format_double(p));
    else
        meta.add("params", "m0=" + std::to_string(m0));

    Output out(o.out);
    write_metadata(out.stream(), meta);
    write_edge_list(graph, out.stream());
    return 0;
}

int run_centrality(const std::string &input, const std::string &measure, const CommonOpts &o) {
    if (o.out.empty())
        throw std::invalid_argument("centrality requires --out PREFIX for its CSV files");
    const auto [graph, labels] = load_edge_list_file(input);
    RowCache cache(512);
    const MeasureSpec spec = build_spec(measure, o);
    const MeasureParams params = build_params(o, &cache);
    const MeasureResult result = compute_measure(graph, spec, params);

    CsvMeta meta = base_meta("centrality", input, o);
    add_measure_meta(meta, spec, params);

    {
        std::ofstream nodes_out(o.out + ".nodes.csv");
        if (!nodes_out)
            throw std::runtime_error("cannot open output file: " + o.out + ".nodes.csv");
        write_node_scores_csv(nodes_out, result.nodes, meta);
    }
    if (result.edges) {
        std::ofstream edges_out(o.out + ".edges.csv");
        if (!edges_out)
            throw std::runtime_error("cannot open output file: " + o.out + ".edges.csv");
        write_edge_scores_csv(edges_out, graph, *result.edges, meta);
    }
    return 0;
}

int run_correlate(const std::string &input, const std::vector<std::string> &measures,
                  const CommonOpts &o) {
    if (measures.empty())
        throw std::invalid_argument("correlate requires at least one --measures entry");
    const auto [graph, labels] = load_edge_list_file(input);
    RowCache cache(512);
    const MeasureParams params = build_params(o, &cache);
    std::vector<MeasureSpec> specs;
    specs.reserve(measures.size());
    for (const auto &text : measures)
        specs.push_back(build_spec(text, o));
    const CorrelationMatrix matrix = correlation_table(graph, specs, params);

    CsvMeta meta = base_meta("correlate", input, o);
    std::string joined;
    for (const auto &name : matrix.names)
        joined += (joined.empty() ? "" : " ") + name;
    meta.add("measures", joined);
    if (!params.exact) {
        meta.add("mode", "sampled");
        meta.add("pairs", std::to_string(params.pairs));
        meta.add("solver", to_string(params.solver.method));
        meta.add("epsilon", format_double(params.solver.epsilon));
    }

    Output out(o.out);
    write_correlation_csv(out.stream(), matrix, meta);
    return 0;
}

int run_ccdf(const std::string &input, const std::string &measure, const std::string &on,
             const CommonOpts &o) {
    if (on != "nodes" && on != "edges")
        throw std::invalid_argument("--on must be nodes or edges");
    const auto [graph, labels] = load_edge_list_file(input);
    RowCache cache(512);
    const MeasureSpec spec = build_spec(measure, o);
    const MeasureParams params = build_params(o, &cache);
    const MeasureResult result = compute_measure(graph, spec, params);

    const std::vector<double> *values = &result.nodes.values;
    if (on == "edges") {
        if (!result.edges)
            throw std::invalid_argument("measure '" + measure + "' has no edge scores");
        values = &result.edges->values;
    }

    CsvMeta meta = base_meta("ccdf", input, o);
    add_measure_meta(meta, spec, params);
    meta.add("on", on);
    Output out(o.out);
    write_ccdf_csv(out.stream(), ccdf(*values), meta);
    return 0;
}

int run_vulnerability(const std::string &input, const std::string &measure, node step,
                      bool recompute, const CommonOpts &o) {
    const auto [graph, labels] = load_edge_list_file(input);
    RowCache cache(512);
    const MeasureSpec spec = build_spec(measure, o);
    const MeasureParams params = build_params(o, &cache);

    const RemovalTrace trace = recompute
        ? vulnerability_sweep_recompute(graph, spec, params, step)
        : vulnerability_sweep(graph, compute_measure(graph, spec, params).nodes, step);

    CsvMeta meta = base_meta("vulnerability", input, o);
    add_measure_meta(meta, spec, params);
    meta.add("strategy", trace.strategy);
    if (step)
        meta.add("step", std::to_string(step));
    Output out(o.out);
    write_trace_csv(out.stream(), trace, meta);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"alpha-current-flow betweenness toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;

    std::string stats_input;
    CLI::App *stats_cmd = app.add_subcommand("stats", "Summary statistics of an edge list");
    stats_cmd->add_option("input", stats_input, "Edge-list file")->required();
    stats_cmd->add_option("--out", opts.out, "Output CSV (default stdout)");
    add_run_opts(stats_cmd, opts);

    std::string gen_model;
    node gen_n = 0, gen_k = 0, gen_m0 = 0;
    double gen_p = 0.0;
    CLI::App *gen_cmd = app.add_subcommand("generate", "Write a random graph as an edge list");
    gen_cmd->add_option("model", gen_model, "ws|er|ba")->required();
    gen_cmd->add_option("--n", gen_n, "Node count")->required();
    gen_cmd->add_option("--k", gen_k, "ws: neighbors per node (even)");
    gen_cmd->add_option("--p", gen_p, "ws: rewiring probability; er: edge probability");
    gen_cmd->add_option("--m0", gen_m0, "ba: edges per arriving node");
    gen_cmd->add_option("--out", opts.out, "Output file (default stdout)");
    add_run_opts(gen_cmd, opts);

    std::string cent_input, cent_measure;
    CLI::App *cent_cmd = app.add_subcommand("centrality", "Node and edge centrality scores");
    cent_cmd->add_option("input", cent_input, "Edge-list file")->required();
    cent_cmd->add_option("--measure", cent_measure,
                         "degree|pagerank|closeness|betweenness|cf|acf[:alpha]|acf-tr[:alpha]")
        ->required();
    cent_cmd->add_option("--out", opts.out, "Output prefix (<out>.nodes.csv, <out>.edges.csv)")
        ->required();
    add_solver_opts(cent_cmd, opts);
    add_run_opts(cent_cmd, opts);

    std::string corr_input;
    std::vector<std::string> corr_measures;
    CLI::App *corr_cmd = app.add_subcommand("correlate", "Pairwise Kendall tau between measures");
    corr_cmd->add_option("input", corr_input, "Edge-list file")->required();
    corr_cmd->add_option("--measures", corr_measures, "Comma-separated measure list")
        ->required()
        ->delimiter(',');
    corr_cmd->add_option("--out", opts.out, "Output CSV (default stdout)");
    add_solver_opts(corr_cmd, opts);
    add_run_opts(corr_cmd, opts);

    std::string ccdf_input, ccdf_measure, ccdf_on = "nodes";
    CLI::App *ccdf_cmd = app.add_subcommand("ccdf", "Complementary cumulative score distribution");
    ccdf_cmd->add_option("input", ccdf_input, "Edge-list file")->required();
    ccdf_cmd->add_option("--measure", ccdf_measure, "Measure name (as in centrality)")->required();
    ccdf_cmd->add_option("--on", ccdf_on, "nodes|edges (default nodes)");
    ccdf_cmd->add_option("--out", opts.out, "Output CSV (default stdout)");
    add_solver_opts(ccdf_cmd, opts);
    add_run_opts(ccdf_cmd, opts);

    std::string vuln_input, vuln_measure;
    node vuln_step = 0;
    bool vuln_recompute = false;
    CLI::App *vuln_cmd = app.add_subcommand("vulnerability", "Targeted node-removal sweep");
    vuln_cmd->add_option("input", vuln_input, "Edge-list file")->required();
    vuln_cmd->add_option("--measure", vuln_measure, "Ranking measure")->required();
    vuln_cmd->add_option("--step", vuln_step, "Nodes removed per step (default: 1, or 1% when n > 200)");
    vuln_cmd->add_flag("--recompute", vuln_recompute, "Recompute the ranking after each step");
    vuln_cmd->add_option("--out", opts.out, "Output CSV (default stdout)");
    add_solver_opts(vuln_cmd, opts);
    add_run_opts(vuln_cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    apply_threads(opts.threads);
    try {
        if (stats_cmd->parsed())
            return run_stats(stats_input, opts);
        if (gen_cmd->parsed())
            return run_generate(gen_model, gen_n, gen_k, gen_p, gen_m0, opts);
        if (cent_cmd->parsed())
            return run_centrality(cent_input, cent_measure, opts);
        if (corr_cmd->parsed())
            return run_correlate(corr_input, corr_measures, opts);
        if (ccdf_cmd->parsed())
            return run_ccdf(ccdf_input, ccdf_measure, ccdf_on, opts);
        if (vuln_cmd->parsed())
            return run_vulnerability(vuln_input, vuln_measure, vuln_step, vuln_recompute, opts);
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
