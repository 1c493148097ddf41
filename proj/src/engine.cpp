#include "gbsp/engine.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace gbsp {
namespace detail {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace

// Where a same-partition send lands, by execution model and phase.
enum class SinkMode : std::uint8_t {
    StandardNext,     // receiver's next-superstep inbox
    AmCurrent,        // current inbox when the receiver has not run yet
    HybridInit,       // iteration 0: buffered into the iteration-1 queues
    HybridGlobal,     // local targets feed this iteration's local phase
    HybridLocalSync,  // next pseudo-superstep
    HybridLocalAsync, // same pseudo-superstep when the receiver is still ahead
};

struct WorkerState {
    std::uint32_t partition = 0;
    std::span<const VertexId> vertices; // owned, ascending
    std::vector<VertexId> boundary;
    std::vector<VertexId> participating; // hybrid local-phase traversal list

    // Superstep engines: cur is consumed, next collects for the following
    // superstep. Hybrid: these are the local queues (lMsgs); the boundary
    // queues below feed global phases.
    std::vector<std::vector<Message>> inbox_cur, inbox_next;
    std::vector<std::vector<Message>> bmsg_cur, bmsg_next;
    std::vector<Message> remote_out; // rMsgs
    std::vector<Message> delivery;   // combined batch staged at the barrier

    SinkMode sink = SinkMode::StandardNext;
    VertexId executing = 0; // traversal cursor, for same-step delivery
    std::uint64_t seq = 0;
    std::uint64_t consumed_this_step = 0;
    std::uint64_t sent_total = 0;
    std::uint64_t consumed_total = 0;
    std::uint64_t pseudo_steps = 0;
    double agg_partial = 0.0;
    bool cap_exceeded = false;
};

struct EngineImpl {
    const PartitionedGraph& graph;
    VertexProgram& program;
    EngineConfig cfg;

    std::vector<VertexState> states;        // indexed by VertexId
    std::vector<std::uint32_t> exec_counts; // compute() invocations per vertex
    std::vector<std::uint64_t> rng_draws;
    std::vector<WorkerState> workers;

    bool has_agg = false;
    AggregateOp agg_op = AggregateOp::Sum;
    double agg_prev = 0.0;
    std::vector<double> agg_scratch;

    RunMetrics metrics;
    std::uint64_t iteration = 0;
    bool stop = false;
    std::atomic<int> workers_in_local_phase{0};

    EngineImpl(const PartitionedGraph& g, VertexProgram& p, const EngineConfig& c)
        : graph(g), program(p), cfg(c) {
        if (cfg.partition_count != g.partition_count())
            throw ConfigError("config expects k=" +
                              std::to_string(cfg.partition_count) +
                              " but the graph is partitioned into " +
                              std::to_string(g.partition_count()));
        if (cfg.max_iterations == 0)
            throw ConfigError("max_iterations must be at least 1");
        if (cfg.trace && cfg.parallel)
            throw ConfigError("message tracing requires a serial run");

        const std::size_t n = g.vertex_count();
        states.assign(n, VertexState{});
        exec_counts.assign(n, 0);
        rng_draws.assign(n, 0);

        if (auto agg = p.aggregate_op()) {
            has_agg = true;
            agg_op = *agg;
            agg_prev = aggregate_identity(agg_op);
        }

        workers.resize(g.partition_count());
        for (std::uint32_t pi = 0; pi < g.partition_count(); ++pi) {
            WorkerState& w = workers[pi];
            w.partition = pi;
            w.vertices = g.partition_vertices(pi);
            w.inbox_cur.resize(w.vertices.size());
            w.inbox_next.resize(w.vertices.size());
            for (VertexId v : w.vertices)
                if (g.is_boundary(v)) w.boundary.push_back(v);
            if (cfg.mode == ExecMode::Hybrid) {
                w.bmsg_cur.resize(w.vertices.size());
                w.bmsg_next.resize(w.vertices.size());
                if (cfg.boundary_participation) {
                    w.participating.assign(w.vertices.begin(), w.vertices.end());
                } else {
                    for (VertexId v : w.vertices)
                        if (!g.is_boundary(v)) w.participating.push_back(v);
                }
            }
            w.agg_partial = has_agg ? aggregate_identity(agg_op) : 0.0;
        }
    }

    void send(WorkerState& w, VertexId from, VertexId to, const Payload& pl) {
        if (to >= graph.vertex_count())
            throw EngineError("message sent to nonexistent vertex " +
                              std::to_string(to));
        const Message m{from, to, pl, w.seq++};
        ++w.sent_total;
        if (cfg.trace) cfg.trace->push_back({iteration, from, to, pl.kind});

        if (graph.partition_of(to) != w.partition) {
            w.remote_out.push_back(m);
            return;
        }
        const std::uint32_t li = graph.local_index(to);
        switch (w.sink) {
        case SinkMode::StandardNext:
            w.inbox_next[li].push_back(m);
            break;
        case SinkMode::AmCurrent:
            // Not yet executed this superstep -> consumed this superstep.
            (to > w.executing ? w.inbox_cur : w.inbox_next)[li].push_back(m);
            break;
        case SinkMode::HybridInit:
        case SinkMode::HybridGlobal:
        case SinkMode::HybridLocalSync:
        case SinkMode::HybridLocalAsync: {
            const QueuePlacement place = route_message(
                graph, to, w.partition, cfg.boundary_participation);
            if (place == QueuePlacement::BoundaryQueue) {
                w.bmsg_next[li].push_back(m); // next iteration's global phase
            } else if (w.sink == SinkMode::HybridLocalAsync && to > w.executing) {
                w.inbox_cur[li].push_back(m);
            } else {
                w.inbox_next[li].push_back(m);
            }
            break;
        }
        }
    }

    void execute_vertex(WorkerState& w, VertexId v, std::vector<Message>&& msgs) {
        if (!msgs.empty()) {
            sort_for_consumption(msgs);
            const SourceCombineRule rule = program.source_combine_rule();
            if (rule != SourceCombineRule::None)
                msgs = apply_source_combiner(std::move(msgs), rule);
            if (cfg.combiner_enabled) {
                const CombineOp op = program.combine_op();
                if (op != CombineOp::None)
                    msgs = apply_combiner(std::move(msgs), op);
            }
        }
        VertexState& st = states[v];
        st.active = true; // a delivered message reactivates the receiver
        ComputeContext ctx;
        ctx.eng_ = this;
        ctx.worker_ = &w;
        ctx.vertex_ = v;
        ctx.iteration_ = iteration;
        ctx.exec_count_ = ++exec_counts[v];
        program.compute(ctx, msgs);
        st.active = !ctx.halt_; // the halt vote lands after compute returns
    }

    // --- standard / asynchronous-messaging supersteps ---

    void run_superstep(WorkerState& w) {
        std::swap(w.inbox_cur, w.inbox_next); // deliver prior messages
        w.consumed_this_step = 0;
        w.sink = cfg.mode == ExecMode::AsyncMessaging ? SinkMode::AmCurrent
                                                      : SinkMode::StandardNext;
        for (std::size_t i = 0; i < w.vertices.size(); ++i) {
            const VertexId v = w.vertices[i];
            auto& q = w.inbox_cur[i];
            if (!states[v].active && q.empty()) continue;
            w.consumed_this_step += q.size();
            w.consumed_total += q.size();
            std::vector<Message> msgs = std::move(q);
            q.clear();
            w.executing = v;
            execute_vertex(w, v, std::move(msgs));
        }
    }

    // Superstep engines detect quiescence one superstep late: the run ends
    // after a superstep that delivered nothing, executed nothing, and left
    // nothing buffered.
    void superstep_barrier() {
        const std::uint64_t remote_pending = combine_remote_batches();
        std::uint64_t pending_local = 0, consumed = 0;
        for (const WorkerState& w : workers) {
            for (const auto& q : w.inbox_next) pending_local += q.size();
            consumed += w.consumed_this_step;
        }
        const TerminationReport report{
            active_count(), remote_pending + pending_local + consumed};

        ++iteration;
        metrics.global_iterations = iteration;
        if (termination_reached(report)) {
            stop = true;
        } else if (iteration >= cfg.max_iterations) {
            stop = true;
            metrics.converged = false;
        } else {
            deliver_remote([this](const Message& m) {
                WorkerState& tw = workers[graph.partition_of(m.target)];
                tw.inbox_next[graph.local_index(m.target)].push_back(m);
            });
        }
        fold_aggregates();
    }

    // --- hybrid iterations ---

    void run_hybrid_iteration(WorkerState& w) {
        w.consumed_this_step = 0;
        if (iteration == 0) {
            // Initialization iteration, executed like a standard superstep 0:
            // every send is buffered into the iteration-1 queues.
            w.sink = SinkMode::HybridInit;
            for (std::size_t i = 0; i < w.vertices.size(); ++i) {
                const VertexId v = w.vertices[i];
                auto& q = w.inbox_cur[i];
                if (!states[v].active && q.empty()) continue;
                w.consumed_total += q.size();
                std::vector<Message> msgs = std::move(q);
                q.clear();
                w.executing = v;
                execute_vertex(w, v, std::move(msgs));
            }
            return;
        }
        std::swap(w.bmsg_cur, w.bmsg_next);
        global_phase(w);
        local_phase(w);
    }

    // Executes each active boundary vertex exactly once on the messages it
    // received during the previous iteration.
    void global_phase(WorkerState& w) {
        w.sink = SinkMode::HybridGlobal;
        for (const VertexId v : w.boundary) {
            const std::uint32_t li = graph.local_index(v);
            auto& q = w.bmsg_cur[li];
            if (!states[v].active && q.empty()) continue;
            w.consumed_this_step += q.size();
            w.consumed_total += q.size();
            std::vector<Message> msgs = std::move(q);
            q.clear();
            w.executing = v;
            execute_vertex(w, v, std::move(msgs));
        }
    }

    // Pseudo-superstep loop: runs until every participating vertex is
    // inactive and no local message is pending. No cross-partition
    // communication happens in here.
    void local_phase(WorkerState& w) {
        workers_in_local_phase.fetch_add(1, std::memory_order_relaxed);
        w.sink = cfg.async_local_messaging ? SinkMode::HybridLocalAsync
                                           : SinkMode::HybridLocalSync;
        const std::uint64_t cap =
            cfg.pseudo_superstep_cap
                ? cfg.pseudo_superstep_cap
                : 10 * std::max<std::uint64_t>(w.vertices.size(), 1);
        std::uint64_t ps = 0;
        for (;;) {
            std::swap(w.inbox_cur, w.inbox_next);
            bool any = false;
            for (const VertexId v : w.participating) {
                if (states[v].active ||
                    !w.inbox_cur[graph.local_index(v)].empty()) {
                    any = true;
                    break;
                }
            }
            if (!any) break;
            if (ps >= cap) {
                w.cap_exceeded = true;
                break;
            }
            ++ps;
            for (const VertexId v : w.participating) {
                const std::uint32_t li = graph.local_index(v);
                auto& q = w.inbox_cur[li];
                if (!states[v].active && q.empty()) continue;
                w.consumed_this_step += q.size();
                w.consumed_total += q.size();
                std::vector<Message> msgs = std::move(q);
                q.clear();
                w.executing = v;
                execute_vertex(w, v, std::move(msgs));
            }
        }
        w.pseudo_steps += ps;
        workers_in_local_phase.fetch_sub(1, std::memory_order_relaxed);
    }

    // All local phases have drained when workers reach this barrier, so the
    // rendezvous decides termination synchronously.
    void hybrid_barrier() {
        const std::uint64_t remote_pending = combine_remote_batches();
        std::uint64_t pending_local = 0;
        for (const WorkerState& w : workers) {
            for (const auto& q : w.bmsg_next) pending_local += q.size();
            for (const auto& q : w.inbox_cur) pending_local += q.size();
            for (const auto& q : w.inbox_next) pending_local += q.size();
        }
        const TerminationReport report{active_count(),
                                       remote_pending + pending_local};
        bool capped = false;
        for (const WorkerState& w : workers) capped = capped || w.cap_exceeded;

        ++iteration;
        metrics.global_iterations = iteration;
        if (termination_reached(report)) {
            stop = true;
        } else if (capped || iteration >= cfg.max_iterations) {
            stop = true;
            metrics.converged = false;
        } else {
            deliver_remote([this](const Message& m) {
                WorkerState& tw = workers[graph.partition_of(m.target)];
                const std::uint32_t li = graph.local_index(m.target);
                if (graph.is_boundary(m.target))
                    tw.bmsg_next[li].push_back(m);
                else
                    tw.inbox_next[li].push_back(m);
            });
        }
        fold_aggregates();
    }

    // --- barrier helpers ---

    std::uint64_t active_count() const {
        std::uint64_t a = 0;
        for (const VertexState& st : states) a += st.active ? 1 : 0;
        return a;
    }

    // Source-combine then combine each partition's outgoing buffer; the
    // combined cardinality is what counts as in transit and, on delivery,
    // as network messages.
    std::uint64_t combine_remote_batches() {
        std::uint64_t total = 0;
        const SourceCombineRule rule = program.source_combine_rule();
        const CombineOp op =
            cfg.combiner_enabled ? program.combine_op() : CombineOp::None;
        for (WorkerState& w : workers) {
            std::vector<Message> batch = std::move(w.remote_out);
            w.remote_out.clear();
            if (rule != SourceCombineRule::None)
                batch = apply_source_combiner(std::move(batch), rule);
            if (op != CombineOp::None)
                batch = apply_combiner(std::move(batch), op);
            w.delivery = std::move(batch);
            total += w.delivery.size();
        }
        return total;
    }

    template <typename Place>
    void deliver_remote(Place place) {
        for (WorkerState& w : workers) {
            if (w.delivery.empty()) continue;
            if (workers_in_local_phase.load(std::memory_order_relaxed) != 0)
                metrics.remote_deliveries_in_local_phase += w.delivery.size();
            for (const Message& m : w.delivery) place(m);
            metrics.remote_messages += w.delivery.size();
            w.delivery.clear();
        }
    }

    void fold_aggregates() {
        if (!has_agg) return;
        agg_scratch.clear();
        for (WorkerState& w : workers) {
            agg_scratch.push_back(w.agg_partial);
            w.agg_partial = aggregate_identity(agg_op);
        }
        agg_prev = reduce_aggregates(agg_scratch, agg_op);
    }

    void run_iteration(WorkerState& w) {
        if (cfg.mode == ExecMode::Hybrid)
            run_hybrid_iteration(w);
        else
            run_superstep(w);
    }

    void run_barrier() {
        if (cfg.mode == ExecMode::Hybrid)
            hybrid_barrier();
        else
            superstep_barrier();
    }

    void drive() {
        if (!cfg.parallel || workers.size() == 1) {
            while (!stop) {
                for (WorkerState& w : workers) run_iteration(w);
                run_barrier();
            }
            return;
        }

        std::exception_ptr first_error;
        std::mutex error_mu;
        auto completion = [this, &first_error]() noexcept {
            if (first_error) {
                stop = true;
                metrics.converged = false;
                return;
            }
            try {
                run_barrier();
            } catch (...) {
                first_error = std::current_exception();
                stop = true;
            }
        };
        std::barrier sync(static_cast<std::ptrdiff_t>(workers.size()),
                          completion);
        {
            std::vector<std::jthread> threads;
            threads.reserve(workers.size());
            for (WorkerState& w : workers) {
                threads.emplace_back([this, &w, &sync, &first_error, &error_mu] {
                    for (;;) {
                        try {
                            if (!stop) run_iteration(w);
                        } catch (...) {
                            std::lock_guard<std::mutex> lock(error_mu);
                            if (!first_error)
                                first_error = std::current_exception();
                        }
                        sync.arrive_and_wait();
                        if (stop) break;
                    }
                });
            }
        }
        if (first_error) std::rethrow_exception(first_error);
    }
};

} // namespace detail

std::span<const Edge> ComputeContext::out_edges() const {
    return eng_->graph.out_edges(vertex_);
}

std::size_t ComputeContext::graph_vertex_count() const {
    return eng_->graph.vertex_count();
}

Side ComputeContext::side() const { return eng_->graph.side(vertex_); }

double ComputeContext::value() const { return eng_->states[vertex_].value; }

void ComputeContext::set_value(double v) { eng_->states[vertex_].value = v; }

std::uint8_t ComputeContext::algo_state() const {
    return eng_->states[vertex_].algo_state;
}

void ComputeContext::set_algo_state(std::uint8_t s) {
    eng_->states[vertex_].algo_state = s;
}

void ComputeContext::send_message(VertexId target, const Payload& payload) {
    eng_->send(*worker_, vertex_, target, payload);
}

void ComputeContext::send_to_neighbors(const Payload& payload) {
    for (const Edge& e : out_edges()) send_message(e.target, payload);
}

void ComputeContext::aggregate(double v) {
    if (eng_->has_agg)
        worker_->agg_partial =
            aggregate_fold(worker_->agg_partial, v, eng_->agg_op);
}

double ComputeContext::previous_aggregate() const { return eng_->agg_prev; }

std::uint32_t ComputeContext::random_index(std::uint32_t bound) {
    if (bound == 0) throw EngineError("random_index needs a positive bound");
    const std::uint64_t draw = eng_->rng_draws[vertex_]++;
    const std::uint64_t base = detail::splitmix64(
        eng_->cfg.rng_seed ^ (0x9e3779b97f4a7c15ULL * (std::uint64_t(vertex_) + 1)));
    return static_cast<std::uint32_t>(detail::splitmix64(base + draw) % bound);
}

const EngineConfig& ComputeContext::config() const { return eng_->cfg; }

RunResult run(const PartitionedGraph& graph, VertexProgram& program,
              const EngineConfig& config) {
    detail::EngineImpl eng(graph, program, config);
    const auto t0 = std::chrono::steady_clock::now();
    eng.drive();
    const auto t1 = std::chrono::steady_clock::now();
    eng.metrics.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    for (const detail::WorkerState& w : eng.workers) {
        eng.metrics.pseudo_supersteps += w.pseudo_steps;
        eng.metrics.messages_sent += w.sent_total;
        eng.metrics.messages_consumed += w.consumed_total;
    }
    return RunResult{std::move(eng.states), eng.metrics};
}

RunResult run_standard(const PartitionedGraph& graph, VertexProgram& program,
                       const EngineConfig& config) {
    EngineConfig c = config;
    c.mode = ExecMode::Standard;
    return run(graph, program, c);
}

RunResult run_am(const PartitionedGraph& graph, VertexProgram& program,
                 const EngineConfig& config) {
    EngineConfig c = config;
    c.mode = ExecMode::AsyncMessaging;
    return run(graph, program, c);
}

RunResult run_hybrid(const PartitionedGraph& graph, VertexProgram& program,
                     const EngineConfig& config) {
    EngineConfig c = config;
    c.mode = ExecMode::Hybrid;
    return run(graph, program, c);
}

} // namespace gbsp
