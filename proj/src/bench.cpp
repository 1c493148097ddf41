#include "gbsp/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "gbsp/algorithms.hpp"
#include "gbsp/generate.hpp"
#include "gbsp/graph_io.hpp"
#include "gbsp/partition.hpp"

namespace gbsp::bench {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t len,
                    std::uint64_t h = 1469598103934665603ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// "name:AxBx..." -> the 'x'-separated fields after the colon.
std::vector<std::string> split_spec(const std::string& spec,
                                    const std::string& what,
                                    std::size_t want) {
    std::vector<std::string> parts;
    const std::string rest = spec.substr(spec.find(':') + 1);
    std::size_t pos = 0;
    for (;;) {
        const auto x = rest.find('x', pos);
        parts.push_back(rest.substr(pos, x == std::string::npos ? x : x - pos));
        if (x == std::string::npos) break;
        pos = x + 1;
    }
    if (parts.size() != want)
        throw ConfigError("bad " + what + " spec '" + spec + "'");
    return parts;
}

std::uint32_t spec_u32(const std::string& field, const std::string& spec) {
    try {
        return static_cast<std::uint32_t>(std::stoul(field));
    } catch (const std::exception&) {
        throw ConfigError("bad generator spec '" + spec + "'");
    }
}

double spec_f64(const std::string& field, const std::string& spec) {
    try {
        return std::stod(field);
    } catch (const std::exception&) {
        throw ConfigError("bad generator spec '" + spec + "'");
    }
}

RawGraph build_graph(const RunManifest& m) {
    if (!m.gen.empty()) {
        if (m.gen.rfind("grid:", 0) == 0) {
            auto d = split_spec(m.gen, "grid", 2);
            return generate_grid(spec_u32(d[0], m.gen), spec_u32(d[1], m.gen));
        }
        if (m.gen.rfind("bipartite:", 0) == 0) {
            auto d = split_spec(m.gen, "bipartite", 3);
            return generate_random_bipartite(spec_u32(d[0], m.gen),
                                             spec_u32(d[1], m.gen),
                                             spec_f64(d[2], m.gen), m.seed);
        }
        if (m.gen.rfind("powerlaw:", 0) == 0) {
            auto d = split_spec(m.gen, "powerlaw", 2);
            return generate_powerlaw(spec_u32(d[0], m.gen),
                                     spec_u32(d[1], m.gen), m.seed);
        }
        throw ConfigError("unknown generator '" + m.gen + "'");
    }
    return load_graph(m.graph_file, parse_graph_format(m.format));
}

VertexId dense_id(const RawGraph& g, std::uint64_t original) {
    const auto it = std::lower_bound(g.original_ids.begin(),
                                     g.original_ids.end(), original);
    if (it == g.original_ids.end() || *it != original)
        throw ConfigError("vertex " + std::to_string(original) +
                          " not in graph");
    return static_cast<VertexId>(it - g.original_ids.begin());
}

ExecMode parse_engine(const std::string& name) {
    if (name == "standard") return ExecMode::Standard;
    if (name == "am") return ExecMode::AsyncMessaging;
    if (name == "hybrid") return ExecMode::Hybrid;
    throw ConfigError("unknown engine '" + name + "'");
}

} // namespace

std::string RunManifest::canonical() const {
    std::ostringstream s;
    s << "algo=" << algo << " engine=" << engine << " graph=" << graph_file
      << " format=" << format << " gen=" << gen << " k=" << k
      << " part=" << part << " part_file=" << part_file << " source="
      << (source ? std::to_string(*source) : std::string("-"))
      << " delta=" << fmt_double(delta) << " budget=" << budget
      << " seed=" << seed << " bp=" << (boundary_participation ? 1 : 0)
      << " async=" << (async_local ? 1 : 0) << " combiner=" << (combiner ? 1 : 0)
      << " max_iterations=" << max_iterations;
    return s.str();
}

void RunManifest::validate() const {
    if (algo != "sssp" && algo != "pagerank-inc" && algo != "pagerank-plain" &&
        algo != "bm")
        throw ConfigError("unknown algorithm '" + algo + "'");
    parse_engine(engine);
    if (gen.empty() == graph_file.empty())
        throw ConfigError("exactly one of --gen and --graph is required");
    if (k == 0) throw ConfigError("k must be at least 1");
    if (part != "hash" && part != "blocks")
        throw ConfigError("--part must be 'hash' or 'blocks'");
    if (algo == "sssp" && !source)
        throw ConfigError("--source is required for sssp");
    if (algo == "pagerank-inc" && !(delta > 0.0))
        throw ConfigError("--delta must be positive for pagerank-inc");
    if (algo == "pagerank-plain" && budget == 0)
        throw ConfigError("--budget must be at least 1 for pagerank-plain");
    if (max_iterations == 0)
        throw ConfigError("--max-iterations must be at least 1");
}

RunOutcome execute_run(const RunManifest& manifest) {
    manifest.validate();
    const RawGraph raw = build_graph(manifest);

    PartitionMap map;
    if (!manifest.part_file.empty())
        map = load_partition_map(manifest.part_file, raw, manifest.k);
    else if (manifest.part == "blocks")
        map = partition_blocks(raw, manifest.k);
    else
        map = partition_hash(raw, manifest.k);
    const PartitionedGraph graph = classify_vertices(raw, std::move(map));

    EngineConfig cfg;
    cfg.mode = parse_engine(manifest.engine);
    cfg.partition_count = manifest.k;
    cfg.boundary_participation = manifest.boundary_participation;
    cfg.async_local_messaging = manifest.async_local;
    cfg.combiner_enabled = manifest.combiner;
    cfg.rng_seed = manifest.seed;
    cfg.max_iterations = manifest.max_iterations;
    cfg.tolerance = manifest.delta;
    cfg.parallel = manifest.parallel;

    std::unique_ptr<VertexProgram> program;
    if (manifest.algo == "sssp") {
        program = std::make_unique<SsspProgram>(dense_id(raw, *manifest.source));
    } else if (manifest.algo == "pagerank-inc") {
        program = std::make_unique<PagerankIncrementalProgram>();
    } else if (manifest.algo == "pagerank-plain") {
        program = std::make_unique<PagerankPlainProgram>(manifest.budget);
    } else {
        if (!raw.bipartite())
            throw ConfigError("bm needs a bipartite graph with side tags");
        if (cfg.mode == ExecMode::Standard)
            program = std::make_unique<BipartiteMatchingStagedProgram>();
        else
            program = std::make_unique<BipartiteMatchingHandshakeProgram>();
    }

    const RunResult result = run(graph, *program, cfg);

    RunOutcome outcome;
    outcome.manifest = manifest;
    outcome.metrics = result.metrics;
    const std::string canon = manifest.canonical();
    outcome.manifest_hash = hex64(fnv1a(canon.data(), canon.size()));

    std::uint64_t h = 1469598103934665603ULL;
    const std::uint64_t n = result.states.size();
    h = fnv1a(&n, sizeof n, h);
    for (const VertexState& st : result.states)
        h = fnv1a(&st.value, sizeof st.value, h);
    outcome.values_checksum = hex64(h);

    if (!manifest.dump_values.empty()) {
        std::ofstream dump(manifest.dump_values);
        if (!dump)
            throw GraphError("cannot open " + manifest.dump_values +
                             " for writing");
        for (std::size_t v = 0; v < result.states.size(); ++v) {
            const double value = result.states[v].value;
            dump << raw.original_ids[v] << ' ';
            if (manifest.algo == "bm") {
                // partner as original id, -1 when unmatched
                if (value >= 0.0)
                    dump << raw.original_ids[static_cast<VertexId>(value)];
                else
                    dump << -1;
            } else {
                dump << fmt_double(value);
            }
            dump << '\n';
        }
        if (!dump)
            throw GraphError("write to " + manifest.dump_values + " failed");
    }
    return outcome;
}

std::string csv_header() {
    return "manifest_hash,algo,engine,k,seed,iterations,remote_messages,"
           "pseudo_supersteps,time_s,converged,values_checksum\n";
}

std::string csv_rows(const RunOutcome& o) {
    std::ostringstream s;
    char t[32];
    std::snprintf(t, sizeof t, "%.6f", o.metrics.wall_time_s);
    s << "# manifest: " << o.manifest.canonical() << '\n'
      << o.manifest_hash << ',' << o.manifest.algo << ',' << o.manifest.engine
      << ',' << o.manifest.k << ',' << o.manifest.seed << ','
      << o.metrics.global_iterations << ',' << o.metrics.remote_messages << ','
      << o.metrics.pseudo_supersteps << ',' << t << ','
      << (o.metrics.converged ? 1 : 0) << ',' << o.values_checksum << '\n';
    return s.str();
}

namespace {

void add_manifest_options(CLI::App& cmd, RunManifest& m) {
    cmd.add_option("--algo", m.algo, "sssp | pagerank-inc | pagerank-plain | bm");
    cmd.add_option("--engine", m.engine, "standard | am | hybrid");
    cmd.add_option("--graph", m.graph_file, "input graph file");
    cmd.add_option("--format", m.format, "edgelist | dimacs | snap");
    cmd.add_option("--gen", m.gen, "grid:WxH | bipartite:LxRxP | powerlaw:NxM");
    cmd.add_option("--k", m.k, "partition count");
    cmd.add_option("--part", m.part, "hash | blocks");
    cmd.add_option("--part-file", m.part_file, "partition map file");
    cmd.add_option("--source", m.source, "sssp source vertex (original id)");
    cmd.add_option("--delta", m.delta, "convergence tolerance");
    cmd.add_option("--budget", m.budget, "pagerank-plain superstep budget");
    cmd.add_option("--seed", m.seed, "run seed");
    cmd.add_flag("--boundary-participation,!--no-boundary-participation",
                 m.boundary_participation,
                 "boundary vertices join hybrid local phases");
    cmd.add_flag("--async-local,!--no-async-local", m.async_local,
                 "asynchronous messaging inside hybrid local phases");
    cmd.add_flag("--combiner,!--no-combiner", m.combiner,
                 "apply the program's combiner");
    cmd.add_option("--max-iterations", m.max_iterations, "iteration cap");
    cmd.add_flag("--parallel,!--serial", m.parallel,
                 "one thread per partition");
    cmd.add_option("--dump-values", m.dump_values,
                   "write final 'vertexId value' lines here");
}

int append_csv(const std::string& path, const std::string& content,
               std::ostream& err) {
    const bool fresh =
        !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) {
        err << "cannot open " << path << " for append\n";
        return 3;
    }
    if (fresh) out << csv_header();
    out << content;
    if (!out) {
        err << "write to " << path << " failed\n";
        return 3;
    }
    return 0;
}

std::string plot_row(const RunOutcome& o) {
    std::ostringstream s;
    s << o.manifest.algo << ',' << o.manifest.engine << ',' << o.manifest.k
      << ',' << fmt_double(o.manifest.delta) << ',' << o.manifest.seed << ','
      << o.metrics.global_iterations << ',' << o.metrics.remote_messages
      << '\n';
    return s.str();
}

int classify_error(const std::exception& e, std::ostream& err) {
    err << "error: " << e.what() << '\n';
    if (dynamic_cast<const GraphError*>(&e)) return 3;
    return 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"vertex-centric BSP graph engine benchmark"};
    app.require_subcommand(1);

    RunManifest manifest;
    std::string out_csv, plot_csv, suite_file;

    CLI::App* run_cmd = app.add_subcommand("run", "execute one configured run");
    add_manifest_options(*run_cmd, manifest);
    run_cmd->add_option("--out", out_csv, "append the metrics row to this CSV");

    CLI::App* suite_cmd =
        app.add_subcommand("suite", "run every manifest line of a suite file");
    suite_cmd->add_option("file", suite_file, "suite file")->required();
    suite_cmd->add_option("--out", out_csv, "aggregate metrics CSV")->required();
    suite_cmd->add_option("--plot-out", plot_csv,
                          "plot-ready iterations/messages CSV");

    std::vector<const char*> argv;
    argv.push_back("graphbsp");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()),
                  const_cast<char**>(argv.data()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    if (run_cmd->parsed()) {
        try {
            const RunOutcome outcome = execute_run(manifest);
            if (out_csv.empty()) {
                out << csv_header() << csv_rows(outcome);
            } else if (int rc = append_csv(out_csv, csv_rows(outcome), err)) {
                return rc;
            }
            return outcome.metrics.converged ? 0 : 2;
        } catch (const std::exception& e) {
            return classify_error(e, err);
        }
    }

    // suite: one manifest per line, '#' comments; failures are flagged and
    // the suite continues
    std::ifstream in(suite_file);
    if (!in) {
        err << "cannot open suite file " << suite_file << '\n';
        return 3;
    }
    std::string csv, plot;
    bool any_failed = false;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty() || toks[0][0] == '#') continue;

        RunManifest m;
        CLI::App parser{"suite line"};
        add_manifest_options(parser, m);
        std::vector<const char*> largv;
        largv.push_back("manifest");
        for (const auto& t : toks) largv.push_back(t.c_str());
        try {
            parser.parse(static_cast<int>(largv.size()),
                         const_cast<char**>(largv.data()));
            const RunOutcome outcome = execute_run(m);
            csv += csv_rows(outcome);
            plot += plot_row(outcome);
            if (!outcome.metrics.converged) {
                any_failed = true;
                csv += "# failed: non-convergence: " + line + "\n";
            }
        } catch (const std::exception& e) {
            any_failed = true;
            csv += "# failed: " + line + ": " + e.what() + "\n";
        }
    }
    if (int rc = append_csv(out_csv, csv, err)) return rc;
    if (!plot_csv.empty()) {
        std::ofstream pout(plot_csv);
        if (!pout) {
            err << "cannot open " << plot_csv << " for writing\n";
            return 3;
        }
        pout << "algo,engine,k,delta,seed,iterations,remote_messages\n" << plot;
        if (!pout) {
            err << "write to " << plot_csv << " failed\n";
            return 3;
        }
    }
    return any_failed ? 2 : 0;
}

} // namespace gbsp::bench
