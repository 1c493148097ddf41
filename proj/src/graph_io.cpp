#include "gbsp/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace gbsp {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
    throw GraphError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_u64(std::string_view tok, std::uint64_t& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

bool parse_f64(std::string_view tok, double& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

struct ParsedEdge {
    std::uint64_t src, dst;
    double weight;
};

RawGraph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path.string());

    std::vector<ParsedEdge> edges;
    std::uint64_t bip_left = 0, bip_right = 0;
    bool bipartite = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0][0] == '#') {
            // "# bipartite L R" side-tag header
            if (toks.size() >= 4 && toks[0] == "#" && toks[1] == "bipartite") {
                if (!parse_u64(toks[2], bip_left) || !parse_u64(toks[3], bip_right))
                    parse_fail(path, lineno, "bad bipartite header");
                bipartite = true;
            }
            continue;
        }
        if (toks.size() != 2 && toks.size() != 3)
            parse_fail(path, lineno, "expected 'src dst [weight]'");
        ParsedEdge e{0, 0, 1.0};
        if (!parse_u64(toks[0], e.src) || !parse_u64(toks[1], e.dst))
            parse_fail(path, lineno, "bad vertex id");
        if (toks.size() == 3 && !parse_f64(toks[2], e.weight))
            parse_fail(path, lineno, "bad weight");
        if (!(e.weight >= 0.0))
            parse_fail(path, lineno, "negative edge weight");
        edges.push_back(e);
    }

    // Compact ids to [0, |V|) in ascending numeric order.
    std::vector<std::uint64_t> ids;
    ids.reserve(edges.size() * 2);
    for (const auto& e : edges) {
        ids.push_back(e.src);
        ids.push_back(e.dst);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::map<std::uint64_t, VertexId> dense;
    for (std::size_t i = 0; i < ids.size(); ++i)
        dense[ids[i]] = static_cast<VertexId>(i);

    RawGraph g;
    g.adjacency.resize(ids.size());
    g.original_ids = std::move(ids);
    for (const auto& e : edges)
        g.adjacency[dense[e.src]].push_back(Edge{dense[e.dst], e.weight, false});

    if (bipartite) {
        if (bip_left + bip_right != g.vertex_count())
            throw GraphError(path.string() + ": bipartite header covers " +
                             std::to_string(bip_left + bip_right) +
                             " vertices, graph has " +
                             std::to_string(g.vertex_count()));
        g.sides.assign(g.vertex_count(), Side::Right);
        for (std::uint64_t v = 0; v < bip_left; ++v)
            g.sides[v] = Side::Left;
        for (std::size_t u = 0; u < g.vertex_count(); ++u)
            for (const Edge& e : g.adjacency[u])
                if (g.sides[u] == g.sides[e.target])
                    throw GraphError(path.string() +
                                     ": edge within one side, input is not bipartite");
    }
    return g;
}

RawGraph load_dimacs_gr(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path.string());

    RawGraph g;
    std::uint64_t n = 0;
    bool have_header = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "p") {
            if (toks.size() < 4 || toks[1] != "sp")
                parse_fail(path, lineno, "expected 'p sp n m'");
            std::uint64_t m = 0;
            if (!parse_u64(toks[2], n) || !parse_u64(toks[3], m))
                parse_fail(path, lineno, "bad problem line");
            g.adjacency.assign(n, {});
            have_header = true;
            continue;
        }
        if (toks[0] == "a") {
            if (!have_header) parse_fail(path, lineno, "arc before problem line");
            if (toks.size() != 4) parse_fail(path, lineno, "expected 'a u v w'");
            std::uint64_t u = 0, v = 0;
            double w = 0.0;
            if (!parse_u64(toks[1], u) || !parse_u64(toks[2], v) ||
                !parse_f64(toks[3], w))
                parse_fail(path, lineno, "bad arc");
            if (u < 1 || u > n || v < 1 || v > n)
                parse_fail(path, lineno, "vertex id out of range");
            if (!(w >= 0.0)) parse_fail(path, lineno, "negative edge weight");
            g.adjacency[u - 1].push_back(
                Edge{static_cast<VertexId>(v - 1), w, false});
            continue;
        }
        parse_fail(path, lineno, "unknown record '" + std::string(toks[0]) + "'");
    }
    if (!have_header) throw GraphError(path.string() + ": missing 'p sp' header");

    g.original_ids.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) g.original_ids[i] = i + 1;
    return g;
}

} // namespace

GraphFormat parse_graph_format(const std::string& name) {
    if (name == "edgelist") return GraphFormat::EdgeList;
    if (name == "dimacs" || name == "dimacs-gr") return GraphFormat::DimacsGr;
    if (name == "snap") return GraphFormat::Snap;
    throw ConfigError("unknown graph format '" + name + "'");
}

RawGraph load_graph(const std::filesystem::path& path, GraphFormat format) {
    switch (format) {
    case GraphFormat::EdgeList:
    case GraphFormat::Snap:
        return load_edge_list(path);
    case GraphFormat::DimacsGr:
        return load_dimacs_gr(path);
    }
    throw ConfigError("unknown graph format");
}

void save_graph(const RawGraph& graph, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw GraphError("cannot open " + path.string() + " for writing");
    if (graph.bipartite()) {
        std::size_t l = 0;
        for (Side s : graph.sides)
            if (s == Side::Left) ++l;
        out << "# bipartite " << l << ' ' << graph.vertex_count() - l << '\n';
    }
    char buf[64];
    for (std::size_t u = 0; u < graph.vertex_count(); ++u) {
        for (const Edge& e : graph.adjacency[u]) {
            std::snprintf(buf, sizeof buf, "%.17g", e.weight);
            out << graph.original_ids[u] << ' ' << graph.original_ids[e.target]
                << ' ' << buf << '\n';
        }
    }
    if (!out) throw GraphError("write to " + path.string() + " failed");
}

PartitionMap load_partition_map(const std::filesystem::path& path,
                                const RawGraph& graph, std::uint32_t k) {
    if (k == 0) throw ConfigError("partition count must be at least 1");
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path.string());

    std::map<std::uint64_t, VertexId> dense;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v)
        dense[graph.original_ids[v]] = static_cast<VertexId>(v);

    PartitionMap map;
    map.partition_count = k;
    map.assignment.assign(graph.vertex_count(), kInvalidVertex);

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks.size() != 2)
            parse_fail(path, lineno, "expected 'vertexId partitionId'");
        std::uint64_t id = 0, p = 0;
        if (!parse_u64(toks[0], id) || !parse_u64(toks[1], p))
            parse_fail(path, lineno, "bad entry");
        auto it = dense.find(id);
        if (it == dense.end())
            parse_fail(path, lineno, "vertex " + std::to_string(id) +
                                         " not in graph");
        if (p >= k)
            parse_fail(path, lineno, "partition " + std::to_string(p) +
                                         " out of range, k=" + std::to_string(k));
        if (map.assignment[it->second] != kInvalidVertex)
            parse_fail(path, lineno, "duplicate assignment for vertex " +
                                         std::to_string(id));
        map.assignment[it->second] = static_cast<std::uint32_t>(p);
    }
    for (std::size_t v = 0; v < map.assignment.size(); ++v)
        if (map.assignment[v] == kInvalidVertex)
            throw GraphError(path.string() + ": vertex " +
                             std::to_string(graph.original_ids[v]) +
                             " has no partition assignment");
    return map;
}

} // namespace gbsp
