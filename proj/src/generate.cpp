#include "gbsp/generate.hpp"

#include <random>

namespace gbsp {

RawGraph generate_grid(std::uint32_t width, std::uint32_t height) {
    if (width == 0 || height == 0)
        throw ConfigError("grid dimensions must be positive");
    RawGraph g;
    const std::size_t n = std::size_t(width) * height;
    g.adjacency.resize(n);
    g.original_ids.resize(n);
    auto id = [width](std::uint32_t r, std::uint32_t c) {
        return static_cast<VertexId>(std::size_t(r) * width + c);
    };
    for (std::uint32_t r = 0; r < height; ++r) {
        for (std::uint32_t c = 0; c < width; ++c) {
            auto& adj = g.adjacency[id(r, c)];
            if (c + 1 < width) adj.push_back(Edge{id(r, c + 1), 1.0, false});
            if (c > 0) adj.push_back(Edge{id(r, c - 1), 1.0, false});
            if (r + 1 < height) adj.push_back(Edge{id(r + 1, c), 1.0, false});
            if (r > 0) adj.push_back(Edge{id(r - 1, c), 1.0, false});
        }
    }
    for (std::size_t v = 0; v < n; ++v) g.original_ids[v] = v;
    return g;
}

RawGraph generate_random_bipartite(std::uint32_t left, std::uint32_t right,
                                   double p, std::uint64_t seed) {
    if (left == 0 || right == 0)
        throw ConfigError("bipartite side sizes must be positive");
    if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError("edge probability must lie in [0, 1]");

    RawGraph g;
    const std::size_t n = std::size_t(left) + right;
    g.adjacency.resize(n);
    g.original_ids.resize(n);
    g.sides.assign(n, Side::Right);
    for (std::uint32_t v = 0; v < left; ++v) g.sides[v] = Side::Left;
    for (std::size_t v = 0; v < n; ++v) g.original_ids[v] = v;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::uint32_t i = 0; i < left; ++i) {
        for (std::uint32_t j = 0; j < right; ++j) {
            if (coin(rng) < p) {
                const VertexId l = i;
                const VertexId r = left + j;
                g.adjacency[l].push_back(Edge{r, 1.0, false});
                g.adjacency[r].push_back(Edge{l, 1.0, false});
            }
        }
    }
    return g;
}

RawGraph generate_powerlaw(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
    if (n == 0 || m == 0)
        throw ConfigError("power-law generator needs positive n and m");
    if (n < m + 1)
        throw ConfigError("power-law generator needs n >= m + 1");

    RawGraph g;
    g.adjacency.resize(n);
    g.original_ids.resize(n);
    for (std::size_t v = 0; v < n; ++v) g.original_ids[v] = v;

    auto connect = [&g](VertexId a, VertexId b) {
        g.adjacency[a].push_back(Edge{b, 1.0, false});
        g.adjacency[b].push_back(Edge{a, 1.0, false});
    };

    // Degree-weighted urn: one entry per edge endpoint.
    std::vector<VertexId> urn;
    urn.reserve(std::size_t(4) * m * n);
    for (std::uint32_t a = 0; a <= m; ++a) {
        for (std::uint32_t b = a + 1; b <= m; ++b) {
            connect(a, b);
            urn.push_back(a);
            urn.push_back(b);
        }
    }

    std::mt19937_64 rng(seed);
    std::vector<VertexId> chosen;
    for (std::uint32_t v = m + 1; v < n; ++v) {
        chosen.clear();
        while (chosen.size() < m) {
            const VertexId t =
                urn[std::uniform_int_distribution<std::size_t>(0, urn.size() - 1)(rng)];
            bool dup = false;
            for (VertexId c : chosen) dup = dup || c == t;
            if (!dup) chosen.push_back(t);
        }
        for (VertexId t : chosen) {
            connect(v, t);
            urn.push_back(v);
            urn.push_back(t);
        }
    }
    return g;
}

} // namespace gbsp
