#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "salt/graph.hpp"
#include "salt/partition.hpp"

namespace salt {

struct CliqueArc {
  Vertex tail = 0;
  Vertex head = 0;
  Weight weight = 0;
  friend bool operator==(const CliqueArc&, const CliqueArc&) = default;
};

// Arcs grouped by tail slot (the tail's position in the level's boundary roster).
struct SlotArcs {
  std::vector<std::uint32_t> begin{0};
  std::vector<Vertex> head;
  std::vector<Weight> weight;

  std::uint32_t size(std::uint32_t slot) const { return begin[slot + 1] - begin[slot]; }
  friend bool operator==(const SlotArcs&, const SlotArcs&) = default;
};

// Overlay graph H of one search direction: per level, the clique arcs between
// boundary vertices of each cell, weighted by the in-cell shortest path.
// Each level also keeps the transposed arcs (grouped by head slot) so a
// backward search can walk the same graph.
class OverlayIndex {
 public:
  OverlayIndex() = default;
  OverlayIndex(Direction direction, std::uint64_t graph_fingerprint, bool arc_reduced,
               std::vector<SlotArcs> out_arcs, const BoundaryClassification& boundary);

  Direction direction() const { return direction_; }
  std::uint64_t graph_fingerprint() const { return fingerprint_; }
  bool arc_reduced() const { return arc_reduced_; }
  std::uint32_t levels() const { return static_cast<std::uint32_t>(out_.size()); }

  const SlotArcs& out_arcs(std::uint32_t level) const { return out_[level - 1]; }
  const SlotArcs& in_arcs(std::uint32_t level) const { return in_[level - 1]; }
  std::size_t arc_count() const;

  // Flat (tail, head, weight) list of one level in storage order.
  std::vector<CliqueArc> arcs(std::uint32_t level, const LevelBoundary& boundary) const;

  friend bool operator==(const OverlayIndex& a, const OverlayIndex& b) {
    return a.direction_ == b.direction_ && a.fingerprint_ == b.fingerprint_ &&
           a.arc_reduced_ == b.arc_reduced_ && a.out_ == b.out_;
  }

 private:
  Direction direction_ = Direction::forward;
  std::uint64_t fingerprint_ = 0;
  bool arc_reduced_ = true;
  std::vector<SlotArcs> out_;
  std::vector<SlotArcs> in_;
};

// Downward arcs of one direction: at level 1 from each boundary vertex to
// every vertex of its cell, at level l >= 2 to every level-(l-1) boundary
// vertex of its cell, carrying the in-cell distance.
class DownwardGraph {
 public:
  DownwardGraph() = default;
  DownwardGraph(Direction direction, std::vector<SlotArcs> levels)
      : direction_(direction), levels_(std::move(levels)) {}

  Direction direction() const { return direction_; }
  std::uint32_t levels() const { return static_cast<std::uint32_t>(levels_.size()); }
  const SlotArcs& arcs(std::uint32_t level) const { return levels_[level - 1]; }
  std::size_t arc_count() const;

  friend bool operator==(const DownwardGraph&, const DownwardGraph&) = default;

 private:
  Direction direction_ = Direction::forward;
  std::vector<SlotArcs> levels_;
};

struct Customization {
  OverlayIndex overlay;
  DownwardGraph downward;
  friend bool operator==(const Customization&, const Customization&) = default;
};

struct CustomizeOptions {
  bool arc_reduction = true;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Local subgraph of one cell; vertices are addressed by local index.
struct CellGraph {
  std::vector<Vertex> vertices;  // local -> global id
  std::vector<std::uint32_t> begin{0};
  std::vector<std::uint32_t> head;  // local ids
  std::vector<Weight> weight;
};

// One Dijkstra per roster vertex (local ids) over the cell graph. With
// reduction on, an arc (b, v) is emitted only when the shortest-path tree path
// from b to v has no other roster vertex as an intermediate.
std::vector<CliqueArc> arc_reduced_clique(const CellGraph& cell, std::span<const std::uint32_t> roster,
                                          bool reduce = true);

// Metric-dependent customization for one direction. The metric-independent
// level-1 cell topology is extracted once at construction; run() may be called
// for any graph sharing the topology (re-customization after weight changes).
class Customizer {
 public:
  Customizer(const Graph& topology, Direction direction, const PartitionHierarchy& hierarchy,
             const BoundaryClassification& boundary, CustomizeOptions options = {});

  // hierarchy and boundary must be the ones the customizer was built with.
  Customization run(const Graph& weighted, const PartitionHierarchy& hierarchy,
                    const BoundaryClassification& boundary) const;

  const CustomizeOptions& options() const { return options_; }

 private:
  struct Level1Cell {
    CellGraph graph;
    std::vector<ArcId> arc_ids;  // source arc of every local arc
    std::vector<std::uint32_t> roster;  // local ids of the cell's level-1 boundary vertices
  };

  Direction direction_;
  CustomizeOptions options_;
  std::vector<std::uint32_t> topology_offsets_;
  std::vector<Vertex> topology_heads_;
  std::vector<Level1Cell> level1_;
};

Customization customize(const Graph& g, Direction direction, const PartitionHierarchy& hierarchy,
                        const BoundaryClassification& boundary, CustomizeOptions options = {});

}  // namespace salt
