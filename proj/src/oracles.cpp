#include "gbsp/oracles.hpp"

#include <limits>
#include <queue>
#include <string>

namespace gbsp::oracle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonnegative_weights(const RawGraph& graph) {
    for (const auto& adj : graph.adjacency)
        for (const Edge& e : adj)
            if (!(e.weight >= 0.0))
                throw GraphError("negative edge weight");
}
} // namespace

std::vector<double> dijkstra(const RawGraph& graph, VertexId source) {
    require_nonnegative_weights(graph);
    const std::size_t n = graph.vertex_count();
    std::vector<double> dist(n, kInf);
    if (source >= n) throw ConfigError("source vertex out of range");

    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.emplace(0.0, source);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (const Edge& e : graph.adjacency[u]) {
            const double nd = d + e.weight;
            if (nd < dist[e.target]) {
                dist[e.target] = nd;
                pq.emplace(nd, e.target);
            }
        }
    }
    return dist;
}

std::vector<double> bellman_ford(const RawGraph& graph, VertexId source) {
    require_nonnegative_weights(graph);
    const std::size_t n = graph.vertex_count();
    std::vector<double> dist(n, kInf);
    if (source >= n) throw ConfigError("source vertex out of range");

    dist[source] = 0.0;
    bool changed = true;
    for (std::size_t round = 0; changed && round < n; ++round) {
        changed = false;
        for (std::size_t u = 0; u < n; ++u) {
            if (dist[u] == kInf) continue;
            for (const Edge& e : graph.adjacency[u]) {
                const double nd = dist[u] + e.weight;
                if (nd < dist[e.target]) {
                    dist[e.target] = nd;
                    changed = true;
                }
            }
        }
    }
    return dist;
}

std::vector<double> power_iteration(const RawGraph& graph,
                                    PowerConvention convention,
                                    std::uint32_t iters) {
    if (iters < 1) throw ConfigError("power iteration needs iters >= 1");
    const std::size_t n = graph.vertex_count();
    const double base = convention == PowerConvention::Unnormalized
                            ? 0.15
                            : 0.15 / static_cast<double>(n);
    std::vector<double> v(n, convention == PowerConvention::Unnormalized
                                 ? 0.0
                                 : 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    for (std::uint32_t it = 0; it < iters; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t u = 0; u < n; ++u) {
            const std::size_t outdeg = graph.adjacency[u].size();
            if (outdeg == 0) continue; // dangling: rank is absorbed
            const double share = v[u] / static_cast<double>(outdeg);
            for (const Edge& e : graph.adjacency[u]) next[e.target] += share;
        }
        for (std::size_t u = 0; u < n; ++u) v[u] = base + 0.85 * next[u];
    }
    return v;
}

MatchingCheck check_matching(const RawGraph& graph,
                             const std::vector<VertexId>& partner) {
    MatchingCheck result;
    const std::size_t n = graph.vertex_count();
    if (!graph.bipartite()) {
        result.violation = "graph carries no bipartite side tags";
        return result;
    }
    if (partner.size() != n) {
        result.violation = "partner vector size mismatch";
        return result;
    }

    auto has_edge = [&graph](VertexId u, VertexId v) {
        for (const Edge& e : graph.adjacency[u])
            if (e.target == v) return true;
        return false;
    };

    for (std::size_t u = 0; u < n; ++u) {
        const VertexId p = partner[u];
        if (p == kInvalidVertex) continue;
        if (p >= n) {
            result.violation = "vertex " + std::to_string(u) +
                               " matched to out-of-range partner";
            return result;
        }
        if (partner[p] != u) {
            result.violation = "partner pointers of " + std::to_string(u) +
                               " and " + std::to_string(p) + " are not mutual";
            return result;
        }
        if (graph.sides[u] == graph.sides[p]) {
            result.violation = "matched pair " + std::to_string(u) + "-" +
                               std::to_string(p) + " lies on one side";
            return result;
        }
        if (!has_edge(u, p)) {
            result.violation = "matched pair " + std::to_string(u) + "-" +
                               std::to_string(p) + " is not a graph edge";
            return result;
        }
    }
    result.valid = true;

    for (std::size_t u = 0; u < n; ++u) {
        if (partner[u] != kInvalidVertex) continue;
        for (const Edge& e : graph.adjacency[u]) {
            if (partner[e.target] == kInvalidVertex) {
                result.violation = "edge " + std::to_string(u) + "-" +
                                   std::to_string(e.target) +
                                   " joins two unmatched vertices";
                return result;
            }
        }
    }
    result.maximal = true;
    return result;
}

} // namespace gbsp::oracle
