#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "gbsp/errors.hpp"

namespace gbsp {

// Dense vertex identifier in [0, |V|). Original (file) ids are kept in a
// side table for output.
using VertexId = std::uint32_t;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();

struct Edge {
    VertexId target = 0;
    double weight = 1.0;
    // True iff the target lives in a different partition than the source.
    // Unset until classify_vertices builds the partitioned view.
    bool remote = false;
};

// Bipartite side tag; None for general graphs.
enum class Side : std::uint8_t { None = 0, Left = 1, Right = 2 };

// Loaded or generated topology, before partitioning. Duplicate edges and
// self-loops are preserved as given.
struct RawGraph {
    std::vector<std::vector<Edge>> adjacency; // out-edges per dense id
    std::vector<std::uint64_t> original_ids;  // dense id -> original id
    std::vector<Side> sides;                  // empty unless bipartite

    std::size_t vertex_count() const { return adjacency.size(); }
    std::size_t edge_count() const {
        std::size_t m = 0;
        for (const auto& a : adjacency) m += a.size();
        return m;
    }
    bool bipartite() const { return !sides.empty(); }
};

// Total assignment of vertices to partitions [0, k).
struct PartitionMap {
    std::vector<std::uint32_t> assignment; // indexed by dense VertexId
    std::uint32_t partition_count = 1;
};

enum class VertexClass : std::uint8_t { Local = 0, Boundary = 1 };

// Immutable partitioned adjacency structure shared read-only by all workers.
// A vertex is Local iff every in-edge source shares its partition; vertices
// with no in-edges are Local (vacuous).
class PartitionedGraph {
public:
    PartitionedGraph(const RawGraph& raw, PartitionMap map);

    std::size_t vertex_count() const { return out_edges_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::span<const Edge> out_edges(VertexId v) const { return out_edges_[v]; }
    std::uint32_t in_degree(VertexId v) const { return in_degree_[v]; }
    VertexClass classification(VertexId v) const { return klass_[v]; }
    bool is_boundary(VertexId v) const { return klass_[v] == VertexClass::Boundary; }
    std::uint32_t partition_of(VertexId v) const { return map_.assignment[v]; }
    std::uint32_t partition_count() const { return map_.partition_count; }
    std::span<const VertexId> partition_vertices(std::uint32_t p) const {
        return partition_vertices_[p];
    }
    // Position of v within its partition's ascending vertex list.
    std::uint32_t local_index(VertexId v) const { return local_index_[v]; }
    std::uint64_t original_id(VertexId v) const { return original_ids_[v]; }
    Side side(VertexId v) const {
        return sides_.empty() ? Side::None : sides_[v];
    }
    bool bipartite() const { return !sides_.empty(); }

private:
    std::vector<std::vector<Edge>> out_edges_;
    std::vector<std::uint32_t> in_degree_;
    std::vector<VertexClass> klass_;
    PartitionMap map_;
    std::vector<std::vector<VertexId>> partition_vertices_;
    std::vector<std::uint32_t> local_index_;
    std::vector<std::uint64_t> original_ids_;
    std::vector<Side> sides_;
    std::size_t edge_count_ = 0;
};

} // namespace gbsp
