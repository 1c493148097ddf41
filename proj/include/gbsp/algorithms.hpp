#pragma once

#include <limits>

#include "gbsp/engine.hpp"

namespace gbsp {

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

// Single-source shortest paths. Superstep 0 seeds the source with 0 and
// everything else with the infinity sentinel; afterwards a vertex adopts the
// minimum incoming distance and relays value + edge weight when it improved.
// Messages received during superstep 0 (asynchronous delivery) are folded in
// as well. Registers the min-combiner.
class SsspProgram final : public VertexProgram {
public:
    explicit SsspProgram(VertexId source) : source_(source) {}

    void compute(ComputeContext& ctx, std::span<const Message> msgs) override;
    CombineOp combine_op() const override { return CombineOp::Min; }

private:
    VertexId source_;
};

// Accumulative PageRank: each vertex keeps a running rank and forwards
// 0.85 * delta / outdeg whenever the accumulated delta reaches the
// configured tolerance. Dangling vertices absorb rank. Registers the
// sum-combiner. Unnormalized fixed point: v = 0.15 + 0.85 * sum(in).
class PagerankIncrementalProgram final : public VertexProgram {
public:
    void compute(ComputeContext& ctx, std::span<const Message> msgs) override;
    CombineOp combine_op() const override { return CombineOp::Sum; }
};

// Conventional damped PageRank with a fixed update budget: vertices stay
// active, recompute 0.15/N + 0.85 * sum(msgs) each execution, and send
// value / outdeg until the budget is spent. The budget counts a vertex's own
// executions, which on the standard engine equals the superstep index + 1.
// Normalized fixed point: v = 0.15/N + 0.85 * sum(in).
class PagerankPlainProgram final : public VertexProgram {
public:
    explicit PagerankPlainProgram(std::uint32_t budget);

    void compute(ComputeContext& ctx, std::span<const Message> msgs) override;
    CombineOp combine_op() const override { return CombineOp::Sum; }

private:
    std::uint32_t budget_;
};

// Matching states kept in VertexState::algo_state. The matched partner is
// stored in VertexState::value (-1 when unmatched).
namespace bm {
inline constexpr std::uint8_t kLeftUnmatched = 0;
inline constexpr std::uint8_t kLeftMatched = 1;
inline constexpr std::uint8_t kRightUngranted = 0;
inline constexpr std::uint8_t kRightGranted = 1;
inline constexpr std::uint8_t kRightMatched = 2;
inline constexpr double kNoPartner = -1.0;
} // namespace bm

// Randomized maximal bipartite matching driven by a three-superstep cycle
// (phase = superstep mod 3): requests at phase 0, grants at phase 1, accepts
// at phase 2, with acceptance processing folded into the next phase 0.
// Matched right vertices stay silent, so exhausted requesters quiesce.
// Meaningful on the synchronous (standard) engine only.
class BipartiteMatchingStagedProgram final : public VertexProgram {
public:
    void compute(ComputeContext& ctx, std::span<const Message> msgs) override;
};

// Message-driven matching handshake: branches on received tokens and the
// vertex's own state rather than the superstep index, so it runs under any
// execution model. A left vertex with an empty queue requests all neighbors
// and halts; one that received only denials stays active and re-requests. A
// granted right vertex denies further requests until its grant resolves;
// a matched one consumes silently.
class BipartiteMatchingHandshakeProgram final : public VertexProgram {
public:
    void compute(ComputeContext& ctx, std::span<const Message> msgs) override;
};

} // namespace gbsp
