#include "gbsp/algorithms.hpp"

#include <string>
#include <vector>

namespace gbsp {

void SsspProgram::compute(ComputeContext& ctx, std::span<const Message> msgs) {
    if (ctx.iteration() == 0 && ctx.execution_count() == 1) {
        ctx.set_value(ctx.vertex() == source_ ? 0.0 : kInfiniteDistance);
        if (ctx.vertex() == source_) {
            for (const Edge& e : ctx.out_edges())
                ctx.send_message(e.target, value_payload(e.weight));
        }
    }
    double best = kInfiniteDistance;
    for (const Message& m : msgs) best = std::min(best, m.payload.value);
    if (best < ctx.value()) {
        ctx.set_value(best);
        for (const Edge& e : ctx.out_edges())
            ctx.send_message(e.target, value_payload(best + e.weight));
    }
    ctx.vote_to_halt();
}

void PagerankIncrementalProgram::compute(ComputeContext& ctx,
                                         std::span<const Message> msgs) {
    double delta = 0.0;
    if (ctx.iteration() == 0 && ctx.execution_count() == 1) {
        ctx.set_value(0.0);
        delta += 0.15;
    }
    for (const Message& m : msgs) delta += m.payload.value;
    ctx.set_value(ctx.value() + delta);
    const std::size_t outdeg = ctx.out_degree();
    if (delta >= ctx.config().tolerance && outdeg > 0) {
        const double share = 0.85 * delta / static_cast<double>(outdeg);
        ctx.send_to_neighbors(value_payload(share));
    }
    ctx.vote_to_halt();
}

PagerankPlainProgram::PagerankPlainProgram(std::uint32_t budget)
    : budget_(budget) {
    if (budget == 0) throw ConfigError("pagerank-plain needs a budget >= 1");
}

void PagerankPlainProgram::compute(ComputeContext& ctx,
                                   std::span<const Message> msgs) {
    const std::uint32_t run = ctx.execution_count();
    const double n = static_cast<double>(ctx.graph_vertex_count());
    if (run == 1) {
        ctx.set_value(1.0 / n);
    } else {
        double sum = 0.0;
        for (const Message& m : msgs) sum += m.payload.value;
        ctx.set_value(0.15 / n + 0.85 * sum);
    }
    const std::size_t outdeg = ctx.out_degree();
    if (run <= budget_) {
        if (outdeg > 0)
            ctx.send_to_neighbors(
                value_payload(ctx.value() / static_cast<double>(outdeg)));
        // stay active: the next update needs this superstep's contributions
    } else {
        ctx.vote_to_halt();
    }
}

namespace {

void require_bipartite(const ComputeContext& ctx) {
    if (ctx.side() == Side::None)
        throw EngineError("bipartite matching needs side-tagged vertices");
}

} // namespace

void BipartiteMatchingStagedProgram::compute(ComputeContext& ctx,
                                             std::span<const Message> msgs) {
    require_bipartite(ctx);
    if (ctx.execution_count() == 1) ctx.set_value(bm::kNoPartner);
    const bool left = ctx.side() == Side::Left;
    const std::uint64_t phase = ctx.iteration() % 3;

    if (left) {
        if (phase == 0) {
            // stage 1: unmatched lefts broadcast match requests
            if (ctx.algo_state() == bm::kLeftUnmatched)
                ctx.send_to_neighbors(token_payload(MsgKind::Request));
            ctx.vote_to_halt();
            return;
        }
        if (phase == 2) {
            // stage 3: adopt one grant, turn the rest away
            bool got_grant = false, got_deny = false;
            for (const Message& m : msgs) {
                if (m.payload.kind == MsgKind::Grant) {
                    got_grant = true;
                    if (ctx.algo_state() == bm::kLeftUnmatched) {
                        ctx.set_value(static_cast<double>(m.source));
                        ctx.set_algo_state(bm::kLeftMatched);
                        ctx.send_message(m.source, token_payload(MsgKind::Accept));
                    } else {
                        ctx.send_message(m.source, token_payload(MsgKind::Deny));
                    }
                } else if (m.payload.kind == MsgKind::Deny) {
                    got_deny = true;
                }
            }
            // only denials: stay active and re-request at the next phase 0
            if (!(got_deny && !got_grant && ctx.algo_state() == bm::kLeftUnmatched))
                ctx.vote_to_halt();
            return;
        }
        ctx.vote_to_halt();
        return;
    }

    // right side
    if (phase == 0) {
        // stage 4: resolve the pending grant
        for (const Message& m : msgs) {
            if (m.payload.kind == MsgKind::Accept) {
                ctx.set_value(static_cast<double>(m.source));
                ctx.set_algo_state(bm::kRightMatched);
            } else if (m.payload.kind == MsgKind::Deny) {
                if (ctx.algo_state() == bm::kRightGranted)
                    ctx.set_algo_state(bm::kRightUngranted);
            }
        }
        ctx.vote_to_halt();
        return;
    }
    if (phase == 1) {
        // stage 2: grant one requester at random; matched rights stay
        // silent so exhausted requesters can quiesce
        if (ctx.algo_state() == bm::kRightUngranted) {
            std::vector<VertexId> requesters;
            for (const Message& m : msgs)
                if (m.payload.kind == MsgKind::Request)
                    requesters.push_back(m.source);
            if (!requesters.empty()) {
                const std::uint32_t pick = ctx.random_index(
                    static_cast<std::uint32_t>(requesters.size()));
                for (std::size_t i = 0; i < requesters.size(); ++i)
                    ctx.send_message(requesters[i],
                                     token_payload(i == pick ? MsgKind::Grant
                                                             : MsgKind::Deny));
                ctx.set_algo_state(bm::kRightGranted);
            }
        }
        ctx.vote_to_halt();
        return;
    }
    ctx.vote_to_halt();
}

void BipartiteMatchingHandshakeProgram::compute(ComputeContext& ctx,
                                                std::span<const Message> msgs) {
    require_bipartite(ctx);
    if (ctx.execution_count() == 1) ctx.set_value(bm::kNoPartner);

    if (ctx.side() == Side::Left) {
        if (msgs.empty()) {
            if (ctx.algo_state() == bm::kLeftUnmatched)
                ctx.send_to_neighbors(token_payload(MsgKind::Request));
            ctx.vote_to_halt();
            return;
        }
        bool processed_grant = false;
        for (const Message& m : msgs) {
            if (m.payload.kind != MsgKind::Grant) continue;
            processed_grant = true;
            if (ctx.algo_state() != bm::kLeftMatched) {
                ctx.set_value(static_cast<double>(m.source));
                ctx.set_algo_state(bm::kLeftMatched);
                ctx.send_message(m.source, token_payload(MsgKind::Accept));
            } else {
                ctx.send_message(m.source, token_payload(MsgKind::Deny));
            }
        }
        // a left that saw only denials stays active and re-requests with an
        // empty queue at its next execution
        if (processed_grant || ctx.algo_state() == bm::kLeftMatched)
            ctx.vote_to_halt();
        return;
    }

    // right side
    if (ctx.algo_state() == bm::kRightUngranted) {
        std::vector<VertexId> requesters;
        for (const Message& m : msgs)
            if (m.payload.kind == MsgKind::Request)
                requesters.push_back(m.source);
        if (!requesters.empty()) {
            const std::uint32_t pick = ctx.random_index(
                static_cast<std::uint32_t>(requesters.size()));
            for (std::size_t i = 0; i < requesters.size(); ++i)
                ctx.send_message(requesters[i],
                                 token_payload(i == pick ? MsgKind::Grant
                                                         : MsgKind::Deny));
            ctx.set_algo_state(bm::kRightGranted);
        }
        ctx.vote_to_halt();
        return;
    }
    if (ctx.algo_state() == bm::kRightGranted) {
        for (const Message& m : msgs) {
            switch (m.payload.kind) {
            case MsgKind::Accept:
                ctx.set_value(static_cast<double>(m.source));
                ctx.set_algo_state(bm::kRightMatched);
                break;
            case MsgKind::Deny:
                ctx.set_algo_state(bm::kRightUngranted);
                break;
            case MsgKind::Request:
                // the pending grant may have resolved earlier in this queue
                if (ctx.algo_state() == bm::kRightUngranted) {
                    ctx.send_message(m.source, token_payload(MsgKind::Grant));
                    ctx.set_algo_state(bm::kRightGranted);
                } else {
                    ctx.send_message(m.source, token_payload(MsgKind::Deny));
                }
                break;
            default:
                break;
            }
        }
        ctx.vote_to_halt();
        return;
    }
    // matched: consume silently
    ctx.vote_to_halt();
}

} // namespace gbsp
