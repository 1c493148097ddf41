#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gbsp/graph.hpp"
#include "gbsp/program.hpp"

namespace gbsp {

namespace detail {
struct EngineImpl;
struct WorkerState;
} // namespace detail

struct RunMetrics {
    std::uint64_t global_iterations = 0;   // supersteps / hybrid iterations
    std::uint64_t remote_messages = 0;     // delivered, post-combining
    std::uint64_t pseudo_supersteps = 0;   // total across partitions; 0 in standard mode
    double wall_time_s = 0.0;              // engine run only
    bool converged = true;                 // false when an iteration cap aborted the run
    // Raw send/consume totals (pre-combining); equal on converged runs with
    // combining disabled.
    std::uint64_t messages_sent = 0;
    std::uint64_t messages_consumed = 0;
    // Remote deliveries observed while any worker was inside a local phase.
    // The hybrid contract requires this to stay zero.
    std::uint64_t remote_deliveries_in_local_phase = 0;
};

struct TerminationReport {
    std::uint64_t active_vertices = 0;
    std::uint64_t in_transit = 0;
};

// The halting rule: nothing active and nothing in flight.
constexpr bool termination_reached(const TerminationReport& r) {
    return r.active_vertices == 0 && r.in_transit == 0;
}

struct RunResult {
    std::vector<VertexState> states; // indexed by dense VertexId
    RunMetrics metrics;
};

// Per-vertex execution context handed to VertexProgram::compute.
class ComputeContext {
public:
    VertexId vertex() const { return vertex_; }
    // Superstep index (standard/am) or global iteration index (hybrid).
    std::uint64_t iteration() const { return iteration_; }
    // 1-based count of compute() invocations on this vertex, this run.
    std::uint32_t execution_count() const { return exec_count_; }

    std::span<const Edge> out_edges() const;
    std::size_t out_degree() const { return out_edges().size(); }
    std::size_t graph_vertex_count() const;
    Side side() const;

    double value() const;
    void set_value(double v);
    std::uint8_t algo_state() const;
    void set_algo_state(std::uint8_t s);

    // Queues a message; it is received per the engine's execution model.
    // Targets outside [0, |V|) are fatal.
    void send_message(VertexId target, const Payload& payload);
    void send_to_neighbors(const Payload& payload);

    // Takes effect after compute returns. Any delivered message reactivates
    // the vertex.
    void vote_to_halt() { halt_ = true; }

    void aggregate(double v);
    // Aggregate reduced at the previous iteration's barrier; the operator
    // identity before the first barrier. Refreshes once per global
    // iteration; pseudo-supersteps read the stale value.
    double previous_aggregate() const;

    // Deterministic uniform draw in [0, bound), seeded from
    // (rng_seed, vertex id, draw index).
    std::uint32_t random_index(std::uint32_t bound);

    const EngineConfig& config() const;

private:
    friend struct detail::EngineImpl;
    ComputeContext() = default;

    detail::EngineImpl* eng_ = nullptr;
    detail::WorkerState* worker_ = nullptr;
    VertexId vertex_ = 0;
    std::uint64_t iteration_ = 0;
    std::uint32_t exec_count_ = 0;
    bool halt_ = false;
};

// Runs `program` over `graph` under the configured execution model.
// config.partition_count must match the graph's partitioning. On iteration
// cap exhaustion the partial values are returned with converged = false.
RunResult run(const PartitionedGraph& graph, VertexProgram& program,
              const EngineConfig& config);

// Mode-checked entry points.
RunResult run_standard(const PartitionedGraph& graph, VertexProgram& program,
                       const EngineConfig& config);
RunResult run_am(const PartitionedGraph& graph, VertexProgram& program,
                 const EngineConfig& config);
RunResult run_hybrid(const PartitionedGraph& graph, VertexProgram& program,
                     const EngineConfig& config);

} // namespace gbsp
