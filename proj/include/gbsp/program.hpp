#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gbsp/message.hpp"

namespace gbsp {

class ComputeContext;

// Mutable per-vertex record. An inactive vertex is not executed until a
// delivered message reactivates it.
struct VertexState {
    double value = 0.0;
    bool active = true;
    std::uint8_t algo_state = 0;
};

enum class ExecMode : std::uint8_t { Standard = 0, AsyncMessaging, Hybrid };

// Debug/send trace record; fill EngineConfig::trace (serial runs only) to
// capture every send in program order.
struct TraceEvent {
    std::uint64_t iteration = 0;
    VertexId source = 0;
    VertexId target = 0;
    MsgKind kind = MsgKind::Value;
};

struct EngineConfig {
    ExecMode mode = ExecMode::Standard;
    std::uint32_t partition_count = 1;
    // Hybrid: boundary vertices join local-phase pseudo-supersteps.
    bool boundary_participation = true;
    // Hybrid: local-phase messages to not-yet-executed vertices are consumed
    // within the same pseudo-superstep.
    bool async_local_messaging = false;
    bool combiner_enabled = true;
    std::uint64_t rng_seed = 0;
    std::uint64_t max_iterations = 100000;
    // Convergence tolerance read by programs that gate message emission.
    double tolerance = 1e-4;
    // Per-partition pseudo-superstep cap per local phase; 0 means the
    // default of 10 * |V_partition|.
    std::uint64_t pseudo_superstep_cap = 0;
    // One thread per partition when true; round-robin on the calling thread
    // otherwise. Both paths produce bit-identical results.
    bool parallel = true;
    std::vector<TraceEvent>* trace = nullptr;
};

// The user-supplied vertex computation. compute() reads and writes only its
// own vertex's state and out-edges; all cross-vertex effects flow through
// sent messages. Instances are shared by all workers and must hold no
// per-vertex mutable state.
class VertexProgram {
public:
    virtual ~VertexProgram() = default;

    virtual void compute(ComputeContext& ctx, std::span<const Message> msgs) = 0;

    virtual CombineOp combine_op() const { return CombineOp::None; }
    virtual SourceCombineRule source_combine_rule() const {
        return SourceCombineRule::None;
    }
    virtual std::optional<AggregateOp> aggregate_op() const { return std::nullopt; }
};

} // namespace gbsp
