#include <doctest.h>

#include <random>

#include "gbsp/message.hpp"
#include "gbsp/partition.hpp"
#include "test_util.hpp"

using namespace gbsp;

namespace {

Message msg(VertexId src, VertexId dst, double v, std::uint64_t seq = 0) {
    return Message{src, dst, value_payload(v), seq};
}

// Two partitions: p0 = {0, 1}, p1 = {2, 3}. Edge 3 -> 1 makes vertex 1 a
// boundary vertex of p0; vertex 0 has no in-edges.
PartitionedGraph routing_fixture() {
    RawGraph g;
    g.adjacency.resize(4);
    g.original_ids = {0, 1, 2, 3};
    g.adjacency[3].push_back(Edge{1, 1.0, false});
    return classify_vertices(g, PartitionMap{{0, 0, 1, 1}, 2});
}

} // namespace

TEST_CASE("route_message: remote, local, boundary and the participation switch") {
    const PartitionedGraph pg = routing_fixture();
    REQUIRE(pg.is_boundary(1));
    REQUIRE(!pg.is_boundary(0));

    CHECK(route_message(pg, 2, 0, false) == QueuePlacement::Remote);
    CHECK(route_message(pg, 0, 0, false) == QueuePlacement::LocalQueue);
    CHECK(route_message(pg, 1, 0, false) == QueuePlacement::BoundaryQueue);
    CHECK(route_message(pg, 1, 0, true) == QueuePlacement::LocalQueue);
    CHECK_THROWS_AS(route_message(pg, 99, 0, false), EngineError);
}

TEST_CASE("combiner: min, sum and the singleton identity") {
    auto reduced = apply_combiner({msg(1, 9, 5), msg(2, 9, 3), msg(3, 9, 9)},
                                  CombineOp::Min);
    REQUIRE(reduced.size() == 1);
    CHECK(reduced[0].payload.value == 3.0);
    CHECK(reduced[0].target == 9);

    reduced = apply_combiner({msg(1, 4, 0.1), msg(2, 4, 0.2)}, CombineOp::Sum);
    REQUIRE(reduced.size() == 1);
    CHECK(reduced[0].payload.value == doctest::Approx(0.3));

    reduced = apply_combiner({msg(1, 4, 0.5)}, CombineOp::Sum);
    REQUIRE(reduced.size() == 1);
    CHECK(reduced[0].payload.value == 0.5);

    // distinct targets stay distinct
    reduced = apply_combiner({msg(1, 4, 1), msg(1, 5, 2), msg(2, 4, 3)},
                             CombineOp::Min);
    REQUIRE(reduced.size() == 2);
    CHECK(reduced[0].target == 4);
    CHECK(reduced[0].payload.value == 1.0);
    CHECK(reduced[1].target == 5);
}

TEST_CASE("source combiner: latest per (source, target), custom min rule") {
    // u sends 7 then 4 to v
    auto reduced = apply_source_combiner({msg(1, 9, 7, 0), msg(1, 9, 4, 1)},
                                         SourceCombineRule::KeepLatest);
    REQUIRE(reduced.size() == 1);
    CHECK(reduced[0].payload.value == 4.0);

    // distinct sources are never merged
    reduced = apply_source_combiner({msg(1, 9, 7, 0), msg(2, 9, 4, 1)},
                                    SourceCombineRule::KeepLatest);
    CHECK(reduced.size() == 2);

    reduced = apply_source_combiner({msg(1, 9, 7, 0), msg(1, 9, 4, 1)},
                                    SourceCombineRule::MinValue);
    REQUIRE(reduced.size() == 1);
    CHECK(reduced[0].payload.value == 4.0);
}

TEST_CASE("aggregate reduction: folds and the empty identity") {
    const double parts[] = {2, 3, 5};
    CHECK(reduce_aggregates(parts, AggregateOp::Sum) == 10.0);
    CHECK(reduce_aggregates({}, AggregateOp::Min) ==
          std::numeric_limits<double>::infinity());
    CHECK(reduce_aggregates({}, AggregateOp::Max) ==
          -std::numeric_limits<double>::infinity());

    // max over per-partition counts equals a direct max
    std::mt19937_64 rng(5);
    for (int round = 0; round < 20; ++round) {
        std::vector<double> counts;
        double direct = -std::numeric_limits<double>::infinity();
        const int k = 1 + int(rng() % 8);
        for (int i = 0; i < k; ++i) {
            counts.push_back(double(rng() % 100));
            direct = std::max(direct, counts.back());
        }
        CHECK(reduce_aggregates(counts, AggregateOp::Max) == direct);
    }
}

TEST_CASE("consumption order sorts by source then send sequence") {
    std::vector<Message> q = {msg(3, 0, 1, 5), msg(1, 0, 2, 9), msg(1, 0, 3, 2),
                              msg(2, 0, 4, 0)};
    sort_for_consumption(q);
    CHECK(q[0].source == 1);
    CHECK(q[0].seq == 2);
    CHECK(q[1].source == 1);
    CHECK(q[1].seq == 9);
    CHECK(q[2].source == 2);
    CHECK(q[3].source == 3);
}

TEST_CASE("routing places every message exactly once") {
    const PartitionedGraph pg = routing_fixture();
    std::mt19937_64 rng(17);
    std::size_t counts[3] = {0, 0, 0};
    const std::size_t total = 500;
    for (std::size_t i = 0; i < total; ++i) {
        const VertexId target = VertexId(rng() % 4);
        const std::uint32_t home = std::uint32_t(rng() % 2);
        const auto place = route_message(pg, target, home, (rng() % 2) != 0);
        counts[static_cast<int>(place)]++;
    }
    CHECK(counts[0] + counts[1] + counts[2] == total);
    CHECK(counts[0] > 0); // remote
    CHECK(counts[1] > 0); // local queue
}
