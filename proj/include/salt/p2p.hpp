#pragma once

#include <cstdint>
#include <vector>

#include "salt/dijkstra.hpp"
#include "salt/index.hpp"
#include "salt/search.hpp"
#include "salt/union_graph.hpp"

namespace salt {

struct QueryResult {
  Weight distance = kInfinity;
  std::uint64_t settled = 0;
  Vertex meeting = kNoVertex;  // bidirectional searches only
};

enum class SaltMode : std::uint8_t { uni, bi };

// Point-to-point engines over one index. Holds private search state, so use
// one engine per thread; the index itself is shared read-only.
class P2PEngine {
 public:
  explicit P2PEngine(const SaltIndex& index);

  QueryResult dijkstra(Vertex s, Vertex t);
  // Bidirectional A* on the full graph with average landmark potentials.
  QueryResult bi_alt(Vertex s, Vertex t);
  // Overlay search without potentials.
  QueryResult crp(Vertex s, Vertex t, bool bidirectional = false);
  // Overlay search with landmark potentials.
  QueryResult salt(Vertex s, Vertex t, SaltMode mode = SaltMode::uni);

 private:
  struct Side {
    LabelStore labels;
    MinHeap heap;
    std::vector<std::int64_t> potential;
  };
  template <typename Arcs, typename Pot>
  QueryResult unidirectional(Vertex s, Vertex t, Arcs&& arcs, Pot&& pot);
  template <typename ArcsF, typename ArcsB, typename Pot>
  QueryResult bidirectional(Vertex s, Vertex t, ArcsF&& forward, ArcsB&& backward, Pot&& pot_x2);
  void check(Vertex s, Vertex t) const;

  const SaltIndex* index_;
  Dijkstra dijkstra_;
  Side sides_[2];
  LevelScope scope_;
};

}  // namespace salt
