#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "salt/graph.hpp"
#include "salt/search.hpp"

namespace salt {

struct PathResult {
  Weight distance = kInfinity;
  std::vector<Vertex> path;  // s .. t; empty when unreachable
  std::uint64_t settled = 0;
};

// Plain label-setting search on the full graph; the reference every other
// engine is checked against.
class Dijkstra {
 public:
  explicit Dijkstra(const Graph& g) : graph_(&g) {}

  PathResult point_to_point(Vertex s, Vertex t);
  std::vector<Weight> one_to_all(Vertex s);
  std::vector<Weight> multi_source(std::span<const Vertex> sources);
  std::uint64_t last_settled() const { return settled_; }

 private:
  void run(std::span<const Vertex> sources, Vertex stop_at);

  const Graph* graph_;
  LabelStore labels_;
  MinHeap heap_;
  std::uint64_t settled_ = 0;
};

PathResult dijkstra_p2p(const Graph& g, Vertex s, Vertex t);
std::vector<Weight> dijkstra_one_to_all(const Graph& g, Vertex s);

}  // namespace salt
