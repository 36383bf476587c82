#pragma once

#include <cstdint>

#include "salt/graph.hpp"

namespace salt {

struct GeneratedNetwork {
  Graph travel_time;
  Graph travel_distance;  // same topology as travel_time
  Coordinates coordinates;
};

// k x k bidirected grid, unit weights, row-major ids (vertex r*k + c sits at x=c, y=r).
GeneratedNetwork grid_graph(std::uint32_t k);

// Same topology as g, weights drawn uniformly from [lo, hi] per arc.
Graph random_weights(const Graph& g, Weight lo, Weight hi, std::uint64_t seed);

// Road-like network: a jittered lattice with missing streets, sparse diagonals
// and a faster arterial every eighth row/column. Distances are rounded
// Euclidean lengths; travel times divide by a per-street speed with a small
// per-direction asymmetry. Only the largest connected component is kept, so
// the result is strongly connected.
GeneratedNetwork road_network(std::uint32_t width, std::uint32_t height, std::uint64_t seed);

}  // namespace salt
