#include "gbsp/graph.hpp"

#include <string>

namespace gbsp {

PartitionedGraph::PartitionedGraph(const RawGraph& raw, PartitionMap map)
    : out_edges_(raw.adjacency),
      map_(std::move(map)),
      original_ids_(raw.original_ids),
      sides_(raw.sides) {
    const std::size_t n = out_edges_.size();
    if (map_.partition_count == 0)
        throw ConfigError("partition count must be at least 1");
    if (map_.assignment.size() != n)
        throw ConfigError("partition map covers " +
                          std::to_string(map_.assignment.size()) +
                          " vertices, graph has " + std::to_string(n));
    for (std::size_t v = 0; v < n; ++v) {
        if (map_.assignment[v] >= map_.partition_count)
            throw ConfigError("vertex " + std::to_string(v) +
                              " assigned to partition " +
                              std::to_string(map_.assignment[v]) +
                              " >= k=" + std::to_string(map_.partition_count));
    }

    in_degree_.assign(n, 0);
    klass_.assign(n, VertexClass::Local);
    for (std::size_t u = 0; u < n; ++u) {
        const std::uint32_t pu = map_.assignment[u];
        for (Edge& e : out_edges_[u]) {
            if (e.target >= n)
                throw GraphError("edge target " + std::to_string(e.target) +
                                 " out of range");
            e.remote = map_.assignment[e.target] != pu;
            ++in_degree_[e.target];
            if (e.remote) klass_[e.target] = VertexClass::Boundary;
            ++edge_count_;
        }
    }

    partition_vertices_.assign(map_.partition_count, {});
    local_index_.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        partition_vertices_[map_.assignment[v]].push_back(
            static_cast<VertexId>(v));
    for (auto& list : partition_vertices_)
        for (std::size_t i = 0; i < list.size(); ++i)
            local_index_[list[i]] = static_cast<std::uint32_t>(i);
}

} // namespace gbsp
