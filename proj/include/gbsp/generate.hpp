#pragma once

#include <cstdint>

#include "gbsp/graph.hpp"

namespace gbsp {

// w x h lattice, row-major ids, 4-neighborhood. Every undirected adjacency
// becomes two directed edges of weight 1, so |E| = 2*(2*w*h - w - h).
RawGraph generate_grid(std::uint32_t width, std::uint32_t height);

// Bipartite graph with left ids [0, l) and right ids [l, l+r). Each pair is
// connected with probability p, in both directions (the request/grant
// handshake needs edges each way). Deterministic for a fixed seed.
RawGraph generate_random_bipartite(std::uint32_t left, std::uint32_t right,
                                   double p, std::uint64_t seed);

// Preferential-attachment graph: a (m+1)-clique seed, then each new vertex
// attaches to m distinct existing vertices; every attachment adds edges in
// both directions. Deterministic for a fixed seed.
RawGraph generate_powerlaw(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

} // namespace gbsp
