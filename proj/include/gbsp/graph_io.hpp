#pragma once

#include <filesystem>

#include "gbsp/graph.hpp"

namespace gbsp {

// Text formats, UTF-8, LF line endings.
//   EdgeList: "src dst [weight]" per line, '#' comments. An optional header
//             "# bipartite L R" tags the L smallest ids Left and the next R
//             Right (ids taken after compaction).
//   DimacsGr: "c" comments, "p sp n m" header, "a u v w" arcs with 1-based
//             ids compacted to 0-based. Arcs are directed as listed.
//   Snap:     same grammar as EdgeList (tab- or space-separated).
enum class GraphFormat { EdgeList, DimacsGr, Snap };

GraphFormat parse_graph_format(const std::string& name);

// Loads a directed graph. Vertex ids are compacted to a dense [0, |V|)
// range in ascending numeric order of the original ids. Duplicate edges and
// self-loops are preserved. Negative weights are rejected.
RawGraph load_graph(const std::filesystem::path& path, GraphFormat format);

// Writes the graph as an edge list using original ids, preserving the
// adjacency multiset (and the bipartite header when tagged).
void save_graph(const RawGraph& graph, const std::filesystem::path& path);

// Reads "vertexId partitionId" lines keyed by original id. The map must be
// total: a missing vertex, a duplicate line, or a partition index >= k is an
// error.
PartitionMap load_partition_map(const std::filesystem::path& path,
                                const RawGraph& graph, std::uint32_t k);

} // namespace gbsp
