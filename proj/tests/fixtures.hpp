#pragma once

#include <memory>

#include "salt/generators.hpp"
#include "salt/index.hpp"
#include "salt/partition.hpp"

namespace fixtures {

// GRID-k with a bisection partition of the given spec.
struct Instance {
  salt::GeneratedNetwork net;
  salt::PartitionHierarchy hierarchy;
};

inline Instance grid(std::uint32_t k, const salt::LevelSpec& spec) {
  Instance in{salt::grid_graph(k), {}};
  in.hierarchy = salt::bisect_partition(in.net.travel_time, in.net.coordinates, spec);
  return in;
}

inline Instance road(std::uint32_t w, std::uint32_t h, std::uint64_t seed, const salt::LevelSpec& spec) {
  Instance in{salt::road_network(w, h, seed), {}};
  in.hierarchy = salt::bisect_partition(in.net.travel_time, in.net.coordinates, spec);
  return in;
}

inline salt::SaltIndex index_for(const Instance& in, const salt::Graph& g, salt::IndexOptions opts = {}) {
  if (opts.threads == 0) opts.threads = 1;
  return salt::SaltIndex::build(g, in.hierarchy, in.net.coordinates, opts);
}

}  // namespace fixtures
