#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gbsp/engine.hpp"

namespace gbsp::bench {

// One fully-specified run. Validated before execution; the canonical string
// is echoed into the CSV for reproducibility and hashed into the row key.
struct RunManifest {
    std::string algo = "sssp";       // sssp | pagerank-inc | pagerank-plain | bm
    std::string engine = "standard"; // standard | am | hybrid
    std::string graph_file;          // mutually exclusive with gen
    std::string format = "edgelist"; // edgelist | dimacs | snap
    std::string gen;                 // grid:WxH | bipartite:LxRxP | powerlaw:NxM
    std::uint32_t k = 1;
    std::string part = "hash"; // hash | blocks
    std::string part_file;     // partition-map file, overrides part
    std::optional<std::uint64_t> source; // original id, sssp only
    double delta = 1e-4;
    std::uint32_t budget = 30;
    std::uint64_t seed = 0;
    bool boundary_participation = true;
    bool async_local = true;
    bool combiner = true;
    std::uint64_t max_iterations = 100000;
    // Execution detail, excluded from the canonical identity: results are
    // bit-identical either way.
    bool parallel = true;
    std::string dump_values; // optional "vertexId value" output path

    std::string canonical() const;
    void validate() const; // throws ConfigError
};

struct RunOutcome {
    RunManifest manifest;
    RunMetrics metrics;
    std::string manifest_hash;   // 16 hex digits
    std::string values_checksum; // 16 hex digits over the final value vector
};

// Loads or generates the graph, partitions it, runs the configured engine,
// and writes the optional value dump.
RunOutcome execute_run(const RunManifest& manifest);

std::string csv_header();
// "# manifest: ..." echo line followed by the data row.
std::string csv_rows(const RunOutcome& outcome);

// Exit codes: 0 ok, 1 usage, 2 non-convergence, 3 I/O.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace gbsp::bench
