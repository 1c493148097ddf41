#pragma once

#include "gbsp/graph.hpp"

namespace gbsp {

// partition(v) = id(v) mod k.
PartitionMap partition_hash(const RawGraph& graph, std::uint32_t k);

// Contiguous id ranges of ceil(n/k) vertices. Stand-in for an external
// locality-aware partitioner.
PartitionMap partition_blocks(const RawGraph& graph, std::uint32_t k);

// Builds the immutable partitioned view: per-vertex Local/Boundary
// classification, edge remoteness flags, and per-partition vertex lists.
PartitionedGraph classify_vertices(const RawGraph& graph, PartitionMap map);

} // namespace gbsp
