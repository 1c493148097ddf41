#pragma once

#include <span>
#include <vector>

#include "gbsp/graph.hpp"

namespace gbsp {

// Algorithm-tagged payload. Value carries a real (distance, rank delta);
// the token kinds drive the matching handshake.
enum class MsgKind : std::uint8_t { Value = 0, Request, Grant, Deny, Accept };

struct Payload {
    double value = 0.0;
    MsgKind kind = MsgKind::Value;
};

inline Payload value_payload(double v) { return Payload{v, MsgKind::Value}; }
inline Payload token_payload(MsgKind kind) { return Payload{0.0, kind}; }

struct Message {
    VertexId source = 0;
    VertexId target = 0;
    Payload payload{};
    // Per-sender send sequence; orders messages from one source and makes
    // queue consumption deterministic.
    std::uint64_t seq = 0;
};

// Associative-commutative reductions over Payload::value, one message per
// target group.
enum class CombineOp : std::uint8_t { None = 0, Min, Max, Sum };

// Reduction of messages sharing (source, target). KeepLatest keeps the
// message with the highest send sequence.
enum class SourceCombineRule : std::uint8_t { None = 0, KeepLatest, MinValue };

enum class AggregateOp : std::uint8_t { Min = 0, Max, Sum };

enum class QueuePlacement : std::uint8_t { Remote = 0, LocalQueue, BoundaryQueue };

// Static routing decision for a message sent from `home_partition`:
// another partition -> Remote; a local vertex of this partition -> the local
// queue; a boundary vertex of this partition -> the boundary queue unless
// boundary participation is on, in which case the local queue. Unknown
// target ids are fatal.
QueuePlacement route_message(const PartitionedGraph& graph, VertexId target,
                             std::uint32_t home_partition,
                             bool boundary_participation);

// Canonical consumption order: (source id, send sequence).
void sort_for_consumption(std::vector<Message>& msgs);

// One message per target, payload folded in encounter order. Requires op to
// be associative and commutative over the payload values.
std::vector<Message> apply_combiner(std::vector<Message> msgs, CombineOp op);

// One message per (source, target) group.
std::vector<Message> apply_source_combiner(std::vector<Message> msgs,
                                           SourceCombineRule rule);

double aggregate_identity(AggregateOp op);
double aggregate_fold(double acc, double v, AggregateOp op);

// Barrier-side fold of per-partition submissions; empty input yields the
// operator identity.
double reduce_aggregates(std::span<const double> per_partition, AggregateOp op);

} // namespace gbsp
