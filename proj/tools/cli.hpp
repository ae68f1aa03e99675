#pragma once

#include "bagen/bagen.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace bagen::cli {

struct CliConfig {
    std::string subcommand;
    std::uint64_t n = 0;
    std::uint64_t d = 0;
    std::string degree_file;
    std::string seed_graph_file;
    std::optional<std::uint64_t> n0;
    bool no_self_loops     = false;
    bool no_parallel_edges = false;
    std::string hash       = "crc";
    std::uint64_t hash_seed0 = 0;
    std::uint64_t hash_seed1 = 1;
    unsigned workers         = 0; // 0: hardware concurrency
    std::uint64_t batch_size = kDefaultBatchSize;
    std::string output;
    std::string format;
    std::uint64_t first_k = 100'000;
    std::optional<std::uint64_t> xmin;
    std::string histogram;
    std::uint64_t sequential_nodes = 1'000'000;
};

// Configuration that survives CLI11 parsing but is still inconsistent.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline GenParams make_params(const CliConfig& c) {
    GenParams p;
    p.no_self_loops     = c.no_self_loops;
    p.no_parallel_edges = c.no_parallel_edges;
    p.hash.kind         = c.hash == "simple" ? HashKind::Simple : HashKind::Crc;
    p.hash.seed0        = c.hash_seed0;
    p.hash.seed1        = c.hash_seed1;

    if (!c.seed_graph_file.empty()) {
        SeedGraph g  = read_seed_graph(c.seed_graph_file);
        p.n0         = g.n0;
        p.seed_edges = std::move(g.edges);
    }
    if (c.n0) {
        if (*c.n0 < p.n0) throw ConfigError("--n0 is smaller than the largest seed node ID + 1");
        p.n0 = *c.n0;
    }

    if (!c.degree_file.empty()) {
        p.degrees = read_degree_file(c.degree_file);
        const NodeId n = p.n0 + p.degrees->size();
        if (c.n != 0 && c.n != n) throw ConfigError("-n disagrees with n0 + number of lines in --degrees-file");
        p.n = n;
    } else {
        if (c.d == 0) throw ConfigError("one of -d/--degree or --degrees-file is required");
        if (c.n == 0) throw ConfigError("-n/--nodes is required with -d");
        p.n = c.n;
        p.d = c.d;
    }
    validate(p);
    return p;
}

inline unsigned effective_workers(const CliConfig& c) {
    if (c.workers) return c.workers;
    return std::max(1U, std::thread::hardware_concurrency());
}

namespace detail {

inline void write_degree_csv(std::ostream& os, const DegreeCounter& c, std::size_t k) {
    os << "node,degree\n";
    for (std::size_t v = 0; v < k; ++v) os << v << ',' << c.counts[v] << '\n';
}

inline void write_histogram_csv(std::ostream& os, const Histogram& h) {
    os << "degree,count\n";
    for (const auto& [deg, count] : h) os << deg << ',' << count << '\n';
}

template <typename F>
void with_output(const std::string& path, std::ostream& fallback, F&& f) {
    if (path.empty() || path == "-") {
        f(fallback);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot create " + path);
    f(out);
    if (!out.flush()) throw std::runtime_error(path + ": write failed");
}

inline int cmd_generate(const CliConfig& c, std::ostream& out, std::ostream& err) {
    const GenParams p = make_params(c);
    const Generator gen(p);
    const OutputFormat fmt = c.format == "text"   ? OutputFormat::TextEdgeList
                             : c.format == "none" ? OutputFormat::None
                             : c.format == "binary" || !c.output.empty() ? OutputFormat::BinaryEdgeList
                                                                        : OutputFormat::None;
    if (fmt != OutputFormat::None && c.output.empty()) throw ConfigError("--format binary/text needs -o/--output");
    unsigned workers = effective_workers(c);
    if (fmt == OutputFormat::TextEdgeList) {
        if (c.workers > 1) throw ConfigError("text output is defined for --workers 1 only");
        workers = 1;
    }

    RunStats stats;
    switch (fmt) {
    case OutputFormat::None:
        stats = run(gen, DiscardConsumer{}, workers, c.batch_size).stats;
        break;
    case OutputFormat::BinaryEdgeList:
        stats = run(gen, BinaryFileConsumer(c.output, gen.m0(), gen.m()), workers, c.batch_size).stats;
        break;
    case OutputFormat::TextEdgeList:
        with_output(c.output, out, [&](std::ostream& os) {
            stats = run(gen, TextStreamConsumer(os), 1, c.batch_size).stats;
        });
        break;
    }
    err << "generated " << stats.edges_emitted << " edges with " << workers << " worker(s) in "
        << stats.elapsed_seconds << " s, " << stats.probes_per_edge() << " probes/edge\n";
    return 0;
}

inline int cmd_degrees(const CliConfig& c, std::ostream& out, std::ostream& err) {
    const GenParams p = make_params(c);
    const Generator gen(p);
    const bool full   = c.xmin.has_value() || !c.histogram.empty();
    const std::size_t k = static_cast<std::size_t>(std::min<std::uint64_t>(c.first_k, p.n));
    const std::size_t counted = full ? static_cast<std::size_t>(p.n) : k;

    const auto res = run(gen, DegreeCountConsumer(counted), effective_workers(c), c.batch_size);
    with_output(c.output, out, [&](std::ostream& os) { write_degree_csv(os, res.result, k); });

    if (full) {
        const Histogram h = degree_histogram(res.result, static_cast<std::size_t>(p.n0));
        if (!c.histogram.empty())
            with_output(c.histogram, out, [&](std::ostream& os) { write_histogram_csv(os, h); });
        if (c.xmin) err << "power-law exponent (xmin " << *c.xmin << "): " << fit_exponent(h, *c.xmin) << '\n';
    }
    err << "counted degrees of " << res.stats.edges_emitted << " edges in " << res.stats.elapsed_seconds << " s\n";
    return 0;
}

// Property checks used when no sequential reference exists.
inline std::vector<std::string> check_properties(const Generator& gen, const std::vector<Edge>& edges) {
    std::vector<std::string> failures;
    const auto& p = gen.params();
    std::uint64_t self_loops = 0, duplicates = 0, bad_source = 0;
    for (NodeId v = p.n0; v < p.n; ++v) {
        const EdgeIndex lo = gen.first_edge(v) - gen.m0();
        std::vector<NodeId> targets;
        for (EdgeIndex k = lo; k < lo + gen.degree(v); ++k) {
            if (edges[k].source != v) ++bad_source;
            if (edges[k].target == v) ++self_loops;
            targets.push_back(edges[k].target);
        }
        std::sort(targets.begin(), targets.end());
        duplicates += static_cast<std::uint64_t>(targets.end() - std::unique(targets.begin(), targets.end()));
    }
    if (bad_source) failures.push_back(std::to_string(bad_source) + " edges with the wrong source");
    if (p.no_self_loops && self_loops) failures.push_back(std::to_string(self_loops) + " self-loops");
    if (p.no_parallel_edges && duplicates) failures.push_back(std::to_string(duplicates) + " parallel edges");
    return failures;
}

inline int cmd_verify(const CliConfig& c, std::ostream& out, std::ostream&) {
    const GenParams p = make_params(c);
    const Generator gen(p);
    const auto res = run(gen, EdgeListConsumer(gen), effective_workers(c), c.batch_size);
    const std::vector<Edge>& edges = res.result;

    std::vector<std::string> failures = check_properties(gen, edges);
    if (!p.no_parallel_edges) {
        const std::vector<Edge> expected = bb_generate(p, Derandomized{}).generated_edges();
        std::uint64_t mismatches = 0;
        std::optional<EdgeIndex> first;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (edges[k] != expected[k]) {
                ++mismatches;
                if (!first) first = gen.m0() + k;
            }
        }
        if (mismatches)
            failures.push_back(std::to_string(mismatches) + " edges differ from the sequential generator (first at edge "
                               + std::to_string(*first) + ")");
        out << "compared " << edges.size() << " edges against the sequential generator\n";
    } else {
        out << "checked " << edges.size() << " edges for self-loops and parallel edges\n";
    }
    if (failures.empty()) {
        out << "PASS\n";
        return 0;
    }
    for (const auto& f : failures) out << "  " << f << '\n';
    out << "FAIL\n";
    return 1;
}

inline int cmd_bench(const CliConfig& c, std::ostream& out, std::ostream&) {
    const GenParams p     = make_params(c);
    const BenchReport rep = run_bench(p, effective_workers(c), c.sequential_nodes, c.batch_size);
    print_bench(out, rep);
    return 0;
}

} // namespace detail

inline void add_graph_options(CLI::App& sub, CliConfig& c) {
    auto* d  = sub.add_option("-d,--degree", c.d, "Out-degree of every new node");
    auto* df = sub.add_option("--degrees-file", c.degree_file, "Per-node degrees, one per line");
    d->excludes(df);
    df->excludes(d);
    sub.add_option("-n,--nodes", c.n, "Total number of nodes");
    sub.add_option("--seed-graph", c.seed_graph_file, "Seed graph edge list (\"u v\" per line)");
    sub.add_option("--n0", c.n0, "Seed node count (default: largest seed node ID + 1)");
    sub.add_flag("--no-self-loops", c.no_self_loops, "Exclude self-loops");
    sub.add_flag("--no-parallel-edges", c.no_parallel_edges, "Reject duplicate targets per node");
    sub.add_option("--hash", c.hash, "Hash function: crc or simple")
        ->transform(CLI::IsMember({"crc", "simple"}, CLI::ignore_case));
    sub.add_option("--hash-seed0", c.hash_seed0, "First CRC seed");
    sub.add_option("--hash-seed1", c.hash_seed1, "Second CRC seed");
    sub.add_option("--workers", c.workers, "Worker threads (default: all cores)")->check(CLI::PositiveNumber);
    sub.add_option("--batch-size", c.batch_size, "Edges per batch")->check(CLI::PositiveNumber);
}

/*
 * Entry point of the `bagen` tool. Returns 0 on success, 1 when a run fails
 * or verification finds a difference, 2 for usage and configuration errors.
 */
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CliConfig c;
    CLI::App app{"Parallel Barabasi-Albert graph generator"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "Generate a graph");
    add_graph_options(*gen, c);
    gen->add_option("-o,--output", c.output, "Output file");
    gen->add_option("--format", c.format, "Output format (default: binary with -o, else none)")
        ->transform(CLI::IsMember({"none", "binary", "text"}, CLI::ignore_case));

    auto* deg = app.add_subcommand("degrees", "Degrees of the first K nodes as CSV");
    add_graph_options(*deg, c);
    deg->add_option("-o,--output", c.output, "CSV output (default: stdout)");
    deg->add_option("--first-k", c.first_k, "Number of leading nodes to report");
    deg->add_option("--xmin", c.xmin, "Fit the power-law exponent above this degree")->check(CLI::PositiveNumber);
    deg->add_option("--histogram", c.histogram, "Write the degree histogram CSV here");

    auto* ver = app.add_subcommand("verify", "Compare against the sequential generator");
    add_graph_options(*ver, c);

    auto* ben = app.add_subcommand("bench", "Throughput and scaling report");
    add_graph_options(*ben, c);
    ben->add_option("--sequential-nodes", c.sequential_nodes, "Node count for the sequential comparison");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*gen) return detail::cmd_generate(c, out, err);
        if (*deg) return detail::cmd_degrees(c, out, err);
        if (*ver) return detail::cmd_verify(c, out, err);
        return detail::cmd_bench(c, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace bagen::cli
