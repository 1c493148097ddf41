#pragma once

#include <string>
#include <vector>

#include "gbsp/graph.hpp"

// Brute-force reference implementations for acceptance and property tests.
// These deliberately share no code with the engine; they operate on the raw
// topology only.

namespace gbsp::oracle {

// Exact shortest distances from `source`; infinity for unreachable vertices.
// Rejects negative weights.
std::vector<double> dijkstra(const RawGraph& graph, VertexId source);

// Independent second shortest-path implementation used to cross-check the
// Dijkstra oracle.
std::vector<double> bellman_ford(const RawGraph& graph, VertexId source);

enum class PowerConvention {
    Unnormalized, // v <- 0.15 + 0.85 * sum(v_u / outdeg_u), all-zeros start
    Normalized,   // v <- 0.15/N + 0.85 * sum(v_u / outdeg_u), uniform start
};

// `iters` applications of the damped update. Dangling vertices absorb rank.
std::vector<double> power_iteration(const RawGraph& graph,
                                    PowerConvention convention,
                                    std::uint32_t iters);

struct MatchingCheck {
    bool valid = false;
    bool maximal = false;
    std::string violation; // first violation found, empty when none
};

// partner[v] == kInvalidVertex means unmatched. valid <=> matched pairs are
// graph edges, mutual, and across sides; maximal <=> no edge joins two
// unmatched vertices.
MatchingCheck check_matching(const RawGraph& graph,
                             const std::vector<VertexId>& partner);

} // namespace gbsp::oracle
