#pragma once

#include <cstdint>
#include <vector>

#include "salt/graph.hpp"
#include "salt/overlay.hpp"
#include "salt/partition.hpp"

namespace salt {

// Cells containing at least one anchor vertex, per level. The level of a
// vertex v is min over anchors x of the highest level at which v and x lie in
// different cells: 0 inside an anchor's level-1 cell, L when v shares no cell
// with any anchor.
class LevelScope {
 public:
  void reset(const PartitionHierarchy& h);
  void add_anchor(Vertex v);

  std::uint32_t level_of(Vertex v) const {
    for (std::uint32_t l = 1; l <= levels_; ++l)
      if (marks_[l - 1][h_->cell(v, l)] == generation_) return l - 1;
    return levels_;
  }
  bool in_region(Vertex v) const { return levels_ == 0 || marks_[0][h_->cell(v, 1)] == generation_; }

 private:
  const PartitionHierarchy* h_ = nullptr;
  std::uint32_t levels_ = 0;
  std::uint32_t generation_ = 0;
  std::vector<std::vector<std::uint32_t>> marks_;
};

// Search graph over the union of the overlay H and the original arcs of the
// anchors' level-1 cells. A vertex at level 0 offers all its original arcs; a
// vertex v at level m >= 1 offers its level-m clique arcs plus the original
// arcs (v, w) that cross cells at level min(m, level(w)).
//
// `graph` supplies the original arcs in the search direction and `cliques`
// the matching overlay arcs (an overlay's out-arcs, or a transposed overlay's
// in-arcs for the backward half of a bidirectional search).
struct UnionGraph {
  const Graph* graph = nullptr;
  const PartitionHierarchy* hierarchy = nullptr;
  const BoundaryClassification* boundary = nullptr;
  const OverlayIndex* overlay = nullptr;
  bool transposed = false;

  const SlotArcs& cliques(std::uint32_t level) const {
    return transposed ? overlay->in_arcs(level) : overlay->out_arcs(level);
  }

  // Calls fn(head, weight) for every arc leaving v; `level` is scope.level_of(v).
  template <typename Fn>
  void for_each_arc(Vertex v, std::uint32_t level, const LevelScope& scope, Fn&& fn) const {
    const Graph& g = *graph;
    if (level == 0) {
      for (ArcId a = g.first_arc(v); a < g.end_arc(v); ++a) fn(g.head(a), g.weight(a));
      return;
    }
    const std::uint32_t slot = boundary->level(level).slot(v);
    if (slot != kNoSlot) {
      const SlotArcs& arcs = cliques(level);
      for (std::uint32_t i = arcs.begin[slot]; i < arcs.begin[slot + 1]; ++i) fn(arcs.head[i], arcs.weight[i]);
    }
    const PartitionHierarchy& h = *hierarchy;
    const CellId home = h.cell(v, 1);
    for (ArcId a = g.first_arc(v); a < g.end_arc(v); ++a) {
      const Vertex w = g.head(a);
      if (h.cell(w, 1) == home) continue;
      const std::uint32_t j = std::min(level, scope.level_of(w));
      if (j == 0 || h.cell(v, j) != h.cell(w, j)) fn(w, g.weight(a));
    }
  }
};

}  // namespace salt
