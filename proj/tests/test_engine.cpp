#include <doctest.h>

#include <cmath>
#include <map>

#include "gbsp/algorithms.hpp"
#include "gbsp/engine.hpp"
#include "gbsp/generate.hpp"
#include "gbsp/oracles.hpp"
#include "gbsp/partition.hpp"
#include "test_util.hpp"

using namespace gbsp;

namespace {

PartitionedGraph make(const RawGraph& g, std::uint32_t k, bool blocks = false) {
    return classify_vertices(g, blocks ? partition_blocks(g, k)
                                       : partition_hash(g, k));
}

EngineConfig config(ExecMode mode, std::uint32_t k) {
    EngineConfig cfg;
    cfg.mode = mode;
    cfg.partition_count = k;
    cfg.parallel = false;
    return cfg;
}

std::vector<double> values_of(const RunResult& r) {
    std::vector<double> v;
    v.reserve(r.states.size());
    for (const auto& st : r.states) v.push_back(st.value);
    return v;
}

// Halts immediately, sends nothing.
struct HaltOnly final : VertexProgram {
    void compute(ComputeContext& ctx, std::span<const Message>) override {
        ctx.vote_to_halt();
    }
};

// Vertex `from` fires one value at `to` during superstep 0; receivers store
// the largest value seen. Everything halts every superstep.
struct OneShot final : VertexProgram {
    VertexId from, to;
    OneShot(VertexId f, VertexId t) : from(f), to(t) {}
    void compute(ComputeContext& ctx, std::span<const Message> msgs) override {
        for (const Message& m : msgs)
            if (m.payload.value > ctx.value()) ctx.set_value(m.payload.value);
        if (ctx.iteration() == 0 && ctx.vertex() == from)
            ctx.send_message(to, value_payload(1.0));
        ctx.vote_to_halt();
    }
};

// Never halts, keeps messaging itself.
struct Restless final : VertexProgram {
    void compute(ComputeContext& ctx, std::span<const Message>) override {
        ctx.send_message(ctx.vertex(), value_payload(1.0));
    }
};

// Counts executions per vertex (single-threaded runs only).
struct ExecutionRecorder final : VertexProgram {
    VertexProgram& inner;
    std::vector<std::uint32_t> execs;
    std::vector<std::map<std::uint64_t, int>> per_iteration;
    explicit ExecutionRecorder(VertexProgram& in, std::size_t n)
        : inner(in), execs(n, 0), per_iteration(n) {}
    void compute(ComputeContext& ctx, std::span<const Message> msgs) override {
        execs[ctx.vertex()]++;
        per_iteration[ctx.vertex()][ctx.iteration()]++;
        inner.compute(ctx, msgs);
    }
    CombineOp combine_op() const override { return inner.combine_op(); }
};

// Submits 1.0 per execution and records the aggregate visible one iteration
// later.
struct AggregateProbe final : VertexProgram {
    std::vector<double> seen; // previous_aggregate by superstep
    void compute(ComputeContext& ctx, std::span<const Message>) override {
        if (ctx.vertex() == 0) {
            if (seen.size() <= ctx.iteration()) seen.resize(ctx.iteration() + 1);
            seen[ctx.iteration()] = ctx.previous_aggregate();
        }
        ctx.aggregate(1.0);
        if (ctx.iteration() < 3)
            ctx.send_message(ctx.vertex(), value_payload(0.0)); // stay busy
        ctx.vote_to_halt();
    }
    std::optional<AggregateOp> aggregate_op() const override {
        return AggregateOp::Sum;
    }
};

} // namespace

TEST_CASE("standard: 3-vertex path needs init, two propagations, quiescence") {
    const RawGraph g = testutil::chain_graph({0, 1, 2});
    const PartitionedGraph pg = make(g, 1);
    SsspProgram sssp(0);
    const RunResult r = run_standard(pg, sssp, config(ExecMode::Standard, 1));

    CHECK(values_of(r) == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(r.metrics.global_iterations == 4);
    CHECK(r.metrics.remote_messages == 0); // k = 1
    CHECK(r.metrics.pseudo_supersteps == 0);
    CHECK(r.metrics.converged);
}

TEST_CASE("standard: immediate termination when nothing happens") {
    const RawGraph g = testutil::chain_graph({0, 1, 2});
    const PartitionedGraph pg = make(g, 1);
    HaltOnly prog;
    const RunResult r = run_standard(pg, prog, config(ExecMode::Standard, 1));
    CHECK(r.metrics.global_iterations == 1);
}

TEST_CASE("am: ascending ids sweep the chain in one superstep") {
    const RawGraph g = testutil::chain_graph({0, 1, 2});
    const PartitionedGraph pg = make(g, 1);
    SsspProgram sssp(0);
    const RunResult r = run_am(pg, sssp, config(ExecMode::AsyncMessaging, 1));
    CHECK(values_of(r) == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(r.metrics.global_iterations == 2);
}

TEST_CASE("am: descending ids fall back to one hop per superstep") {
    // chain runs 2 -> 1 -> 0, so every hop targets an already-executed vertex
    const RawGraph g = testutil::chain_graph({2, 1, 0});
    const PartitionedGraph pg = make(g, 1);
    SsspProgram sssp(2);

    const RunResult am = run_am(pg, sssp, config(ExecMode::AsyncMessaging, 1));
    const RunResult std_ = run_standard(pg, sssp, config(ExecMode::Standard, 1));
    CHECK(values_of(am) == std::vector<double>{2.0, 1.0, 0.0});
    CHECK(am.metrics.global_iterations == 4);
    CHECK(am.metrics.global_iterations == std_.metrics.global_iterations);
}

TEST_CASE("hybrid: k=1 degenerate run matches the oracle in fewer iterations") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const RawGraph g = testutil::random_digraph(seed, 20, 120);
        const PartitionedGraph pg = make(g, 1);
        SsspProgram sssp(0);

        const RunResult hyb = run_hybrid(pg, sssp, config(ExecMode::Hybrid, 1));
        const RunResult std_ =
            run_standard(pg, sssp, config(ExecMode::Standard, 1));
        const auto want = oracle::dijkstra(g, 0);

        CHECK(values_of(hyb) == want);
        CHECK(values_of(std_) == want);
        CHECK(hyb.metrics.global_iterations <= std_.metrics.global_iterations);
        // k=1 has no boundary vertices: everything after iteration 0 runs in
        // local phases
        CHECK(hyb.metrics.remote_messages == 0);
    }
}

TEST_CASE("hybrid: grid iteration counts collapse against superstep engines") {
    const RawGraph g = generate_grid(16, 16);
    const PartitionedGraph pg = make(g, 4, true);
    SsspProgram sssp(0);

    EngineConfig hybrid_cfg = config(ExecMode::Hybrid, 4);
    hybrid_cfg.async_local_messaging = true;
    const RunResult hyb = run_hybrid(pg, sssp, hybrid_cfg);
    const RunResult am = run_am(pg, sssp, config(ExecMode::AsyncMessaging, 4));
    const RunResult std_ = run_standard(pg, sssp, config(ExecMode::Standard, 4));

    const auto want = oracle::dijkstra(g, 0);
    CHECK(values_of(hyb) == want);
    CHECK(values_of(am) == want);
    CHECK(values_of(std_) == want);

    CHECK(hyb.metrics.global_iterations <= am.metrics.global_iterations);
    CHECK(am.metrics.global_iterations <= std_.metrics.global_iterations);
    CHECK(hyb.metrics.global_iterations * 3 <= std_.metrics.global_iterations);

    CHECK(hyb.metrics.remote_messages <= am.metrics.remote_messages);
    CHECK(am.metrics.remote_messages <= std_.metrics.remote_messages);
}

TEST_CASE("termination rule: in-transit messages forbid halting") {
    CHECK(!termination_reached(TerminationReport{0, 3}));
    CHECK(termination_reached(TerminationReport{0, 0}));
    CHECK(!termination_reached(TerminationReport{2, 0}));
}

TEST_CASE("termination: a remote message in transit keeps the run alive") {
    // vertices 0 and 1 in different partitions; everything halts at superstep
    // 0 but one message is still in flight at the barrier
    RawGraph g;
    g.adjacency.resize(2);
    g.original_ids = {0, 1};
    g.adjacency[0].push_back(Edge{1, 1.0, false});
    const PartitionedGraph pg = make(g, 2);
    OneShot prog(0, 1);

    const RunResult r = run_standard(pg, prog, config(ExecMode::Standard, 2));
    CHECK(r.states[1].value == 1.0); // delivered and consumed after the barrier
    CHECK(r.metrics.global_iterations > 1);
    CHECK(r.metrics.remote_messages == 1);
}

TEST_CASE("reactivation: a delivered message wakes a halted vertex") {
    RawGraph g;
    g.adjacency.resize(2);
    g.original_ids = {0, 1};
    const PartitionedGraph pg = make(g, 1);
    OneShot inner(0, 1);
    ExecutionRecorder rec(inner, 2);

    run_standard(pg, rec, config(ExecMode::Standard, 1));
    // vertex 1: superstep 0 (initially active) + the reactivated consumption
    CHECK(rec.execs[1] == 2);
}

TEST_CASE("non-convergence: iteration cap aborts with partial metrics") {
    RawGraph g;
    g.adjacency.resize(2);
    g.original_ids = {0, 1};
    const PartitionedGraph pg = make(g, 1);
    Restless prog;
    EngineConfig cfg = config(ExecMode::Standard, 1);
    cfg.max_iterations = 10;

    const RunResult r = run_standard(pg, prog, cfg);
    CHECK(!r.metrics.converged);
    CHECK(r.metrics.global_iterations == 10);
}

TEST_CASE("hybrid: pseudo-superstep cap aborts as non-converged") {
    RawGraph g;
    g.adjacency.resize(2);
    g.original_ids = {0, 1};
    const PartitionedGraph pg = make(g, 1);
    Restless prog;
    EngineConfig cfg = config(ExecMode::Hybrid, 1);
    cfg.pseudo_superstep_cap = 5;

    const RunResult r = run_hybrid(pg, prog, cfg);
    CHECK(!r.metrics.converged);
}

TEST_CASE("sending to an unknown vertex id is fatal") {
    RawGraph g;
    g.adjacency.resize(1);
    g.original_ids = {0};
    const PartitionedGraph pg = make(g, 1);
    OneShot prog(0, 7); // vertex 7 does not exist
    CHECK_THROWS_AS(run_standard(pg, prog, config(ExecMode::Standard, 1)),
                    EngineError);
}

TEST_CASE("aggregates: reduced at the barrier, visible next iteration") {
    RawGraph g;
    g.adjacency.resize(3);
    g.original_ids = {0, 1, 2};
    const PartitionedGraph pg = make(g, 2);
    AggregateProbe prog;

    run_standard(pg, prog, config(ExecMode::Standard, 2));
    REQUIRE(prog.seen.size() >= 3);
    CHECK(prog.seen[0] == 0.0); // identity before the first barrier
    CHECK(prog.seen[1] == 3.0); // all three executed at superstep 0
    CHECK(prog.seen[2] == 3.0);
}

TEST_CASE("hybrid: chain relaxes inside one local phase") {
    // vertex 0 alone in p0; the chain 1 -> 2 -> ... -> 8 lives in p1
    RawGraph g;
    g.adjacency.resize(9);
    g.original_ids.resize(9);
    for (std::size_t v = 0; v < 9; ++v) g.original_ids[v] = v;
    g.adjacency[0].push_back(Edge{1, 1.0, false});
    for (VertexId v = 1; v < 8; ++v)
        g.adjacency[v].push_back(Edge{v + 1, 1.0, false});
    PartitionMap map;
    map.partition_count = 2;
    map.assignment = {0, 1, 1, 1, 1, 1, 1, 1, 1};
    const PartitionedGraph pg = classify_vertices(g, std::move(map));
    SsspProgram sssp(0);

    EngineConfig sync_cfg = config(ExecMode::Hybrid, 2);
    sync_cfg.async_local_messaging = false;
    const RunResult sync = run_hybrid(pg, sssp, sync_cfg);
    CHECK(values_of(sync) ==
          std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7, 8});
    // the head update arrives via the global phase; seven relays follow
    CHECK(sync.metrics.pseudo_supersteps == 7);

    EngineConfig async_cfg = config(ExecMode::Hybrid, 2);
    async_cfg.async_local_messaging = true;
    const RunResult async_ = run_hybrid(pg, sssp, async_cfg);
    CHECK(values_of(async_) == values_of(sync));
    CHECK(async_.metrics.pseudo_supersteps == 1);
}

TEST_CASE("hybrid: iteration-0 sends are consumed in iteration 1") {
    const RawGraph g = testutil::chain_graph({0, 1, 2});
    const PartitionedGraph pg = make(g, 1);
    SsspProgram sssp(0);
    const RunResult r = run_hybrid(pg, sssp, config(ExecMode::Hybrid, 1));
    CHECK(values_of(r) == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(r.metrics.global_iterations == 2); // init + one local-phase iteration
}

TEST_CASE("hybrid: boundary vertices execute at most once per global phase") {
    const RawGraph g = generate_grid(8, 8);
    const PartitionedGraph pg = make(g, 2, true);
    SsspProgram inner(0);

    EngineConfig cfg = config(ExecMode::Hybrid, 2);
    cfg.boundary_participation = false; // boundary vertices only run globally
    ExecutionRecorder rec2(inner, g.vertex_count());
    const RunResult r = run_hybrid(pg, rec2, cfg);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!pg.is_boundary(v)) continue;
        for (const auto& [iter, count] : rec2.per_iteration[v]) {
            if (iter == 0) continue; // initialization iteration
            CHECK(count <= 1);
        }
    }
    // participation off still converges to the right answer
    CHECK(values_of(r) == oracle::dijkstra(g, 0));
}

TEST_CASE("no remote delivery ever lands inside a local phase") {
    const RawGraph g = generate_grid(16, 16);
    const PartitionedGraph pg = make(g, 4, true);
    SsspProgram sssp(0);
    for (bool parallel : {false, true}) {
        EngineConfig cfg = config(ExecMode::Hybrid, 4);
        cfg.parallel = parallel;
        const RunResult r = run_hybrid(pg, sssp, cfg);
        CHECK(r.metrics.remote_deliveries_in_local_phase == 0);
    }
}

TEST_CASE("message conservation: sent equals consumed with combining off") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const RawGraph g = testutil::random_digraph(seed, 20, 150);
        const PartitionedGraph pg = make(g, 4);
        SsspProgram sssp(0);
        for (ExecMode mode : {ExecMode::Standard, ExecMode::AsyncMessaging,
                              ExecMode::Hybrid}) {
            EngineConfig cfg = config(mode, 4);
            cfg.combiner_enabled = false;
            const RunResult r = run(pg, sssp, cfg);
            REQUIRE(r.metrics.converged);
            CHECK(r.metrics.messages_sent == r.metrics.messages_consumed);
        }
    }
}

TEST_CASE("determinism: parallel and serial runs are bit-identical") {
    const RawGraph g = generate_powerlaw(300, 3, 21);
    const PartitionedGraph pg = make(g, 4);
    for (ExecMode mode :
         {ExecMode::Standard, ExecMode::AsyncMessaging, ExecMode::Hybrid}) {
        PagerankIncrementalProgram pr;
        EngineConfig serial = config(mode, 4);
        serial.tolerance = 1e-6;
        EngineConfig parallel = serial;
        parallel.parallel = true;

        const RunResult a = run(pg, pr, serial);
        const RunResult b = run(pg, pr, parallel);
        const RunResult c = run(pg, pr, serial);

        CHECK(values_of(a) == values_of(b));
        CHECK(values_of(a) == values_of(c));
        CHECK(a.metrics.global_iterations == b.metrics.global_iterations);
        CHECK(a.metrics.remote_messages == b.metrics.remote_messages);
        CHECK(a.metrics.pseudo_supersteps == b.metrics.pseudo_supersteps);
        CHECK(a.metrics.messages_sent == b.metrics.messages_sent);
    }
}

TEST_CASE("config validation") {
    const RawGraph g = testutil::chain_graph({0, 1, 2});
    const PartitionedGraph pg = make(g, 2);
    SsspProgram sssp(0);

    EngineConfig wrong_k = config(ExecMode::Standard, 4);
    CHECK_THROWS_AS(run(pg, sssp, wrong_k), ConfigError);

    EngineConfig traced = config(ExecMode::Standard, 2);
    std::vector<TraceEvent> events;
    traced.trace = &events;
    traced.parallel = true;
    CHECK_THROWS_AS(run(pg, sssp, traced), ConfigError);
}
