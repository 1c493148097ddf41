#include "gbsp/message.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

namespace gbsp {

QueuePlacement route_message(const PartitionedGraph& graph, VertexId target,
                             std::uint32_t home_partition,
                             bool boundary_participation) {
    if (target >= graph.vertex_count())
        throw EngineError("message sent to nonexistent vertex " +
                          std::to_string(target));
    if (graph.partition_of(target) != home_partition)
        return QueuePlacement::Remote;
    if (graph.is_boundary(target) && !boundary_participation)
        return QueuePlacement::BoundaryQueue;
    return QueuePlacement::LocalQueue;
}

void sort_for_consumption(std::vector<Message>& msgs) {
    std::stable_sort(msgs.begin(), msgs.end(),
                     [](const Message& a, const Message& b) {
                         if (a.source != b.source) return a.source < b.source;
                         return a.seq < b.seq;
                     });
}

std::vector<Message> apply_combiner(std::vector<Message> msgs, CombineOp op) {
    if (op == CombineOp::None || msgs.size() <= 1) return msgs;

    std::vector<Message> out;
    out.reserve(msgs.size());
    std::unordered_map<VertexId, std::size_t> slot; // target -> index in out
    slot.reserve(msgs.size());
    for (const Message& m : msgs) {
        auto [it, fresh] = slot.try_emplace(m.target, out.size());
        if (fresh) {
            out.push_back(m);
            continue;
        }
        double& acc = out[it->second].payload.value;
        switch (op) {
        case CombineOp::Min: acc = std::min(acc, m.payload.value); break;
        case CombineOp::Max: acc = std::max(acc, m.payload.value); break;
        case CombineOp::Sum: acc += m.payload.value; break;
        case CombineOp::None: break;
        }
    }
    return out;
}

std::vector<Message> apply_source_combiner(std::vector<Message> msgs,
                                           SourceCombineRule rule) {
    if (rule == SourceCombineRule::None || msgs.size() <= 1) return msgs;

    struct Key {
        VertexId source, target;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return std::hash<std::uint64_t>()(
                (std::uint64_t(k.source) << 32) | k.target);
        }
    };

    std::vector<Message> out;
    out.reserve(msgs.size());
    std::unordered_map<Key, std::size_t, KeyHash> slot;
    slot.reserve(msgs.size());
    for (const Message& m : msgs) {
        auto [it, fresh] = slot.try_emplace(Key{m.source, m.target}, out.size());
        if (fresh) {
            out.push_back(m);
            continue;
        }
        Message& kept = out[it->second];
        switch (rule) {
        case SourceCombineRule::KeepLatest:
            if (m.seq >= kept.seq) kept = m;
            break;
        case SourceCombineRule::MinValue:
            kept.payload.value = std::min(kept.payload.value, m.payload.value);
            kept.seq = std::max(kept.seq, m.seq);
            break;
        case SourceCombineRule::None:
            break;
        }
    }
    return out;
}

double aggregate_identity(AggregateOp op) {
    switch (op) {
    case AggregateOp::Min: return std::numeric_limits<double>::infinity();
    case AggregateOp::Max: return -std::numeric_limits<double>::infinity();
    case AggregateOp::Sum: return 0.0;
    }
    return 0.0;
}

double aggregate_fold(double acc, double v, AggregateOp op) {
    switch (op) {
    case AggregateOp::Min: return std::min(acc, v);
    case AggregateOp::Max: return std::max(acc, v);
    case AggregateOp::Sum: return acc + v;
    }
    return acc;
}

double reduce_aggregates(std::span<const double> per_partition, AggregateOp op) {
    double acc = aggregate_identity(op);
    for (double v : per_partition) acc = aggregate_fold(acc, v, op);
    return acc;
}

} // namespace gbsp
