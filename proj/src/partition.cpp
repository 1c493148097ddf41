#include "gbsp/partition.hpp"

namespace gbsp {

PartitionMap partition_hash(const RawGraph& graph, std::uint32_t k) {
    if (k == 0) throw ConfigError("partition count must be at least 1");
    PartitionMap map;
    map.partition_count = k;
    map.assignment.resize(graph.vertex_count());
    for (std::size_t v = 0; v < graph.vertex_count(); ++v)
        map.assignment[v] = static_cast<std::uint32_t>(v % k);
    return map;
}

PartitionMap partition_blocks(const RawGraph& graph, std::uint32_t k) {
    if (k == 0) throw ConfigError("partition count must be at least 1");
    PartitionMap map;
    map.partition_count = k;
    const std::size_t n = graph.vertex_count();
    map.assignment.resize(n);
    const std::size_t block = (n + k - 1) / k; // ceil(n / k)
    for (std::size_t v = 0; v < n; ++v)
        map.assignment[v] =
            static_cast<std::uint32_t>(block == 0 ? 0 : v / block);
    return map;
}

PartitionedGraph classify_vertices(const RawGraph& graph, PartitionMap map) {
    return PartitionedGraph(graph, std::move(map));
}

} // namespace gbsp
