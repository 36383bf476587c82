#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "salt/graph.hpp"

namespace salt {

// Cell counts per level: spec[0] = |C^1| ... spec[L-1] = |C^L|.
using LevelSpec = std::vector<std::uint32_t>;

// Four-level profile with 16 top cells, scaled to the graph size.
LevelSpec default_level_spec(std::uint32_t vertex_count);
// Six levels, 2^20 ... 16 cells: the continental-scale profile.
LevelSpec continental_level_spec();
// "default", "continental", or a comma separated list "|C^1|,...,|C^L|".
LevelSpec parse_level_spec(const std::string& text, std::uint32_t vertex_count);

// Nested multilevel partition of a graph's vertices.
//
// Stored as the level-1 cell of every vertex plus one parent map per level;
// cells at higher levels are cached per vertex for constant-time lookup.
// boundary_level(v) is the highest level at which v has an incident arc
// (either direction) crossing cells, 0 for interior vertices.
class PartitionHierarchy {
 public:
  PartitionHierarchy() = default;
  // parents[l-1][c] is the level-(l+1) supercell of level-l cell c, l = 1..L-1.
  PartitionHierarchy(const Graph& g, LevelSpec spec, std::vector<CellId> level1,
                     std::vector<std::vector<CellId>> parents);

  std::uint32_t levels() const { return static_cast<std::uint32_t>(spec_.size()); }
  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(boundary_level_.size()); }
  const LevelSpec& level_spec() const { return spec_; }
  std::uint32_t cell_count(std::uint32_t level) const { return spec_[level - 1]; }

  CellId cell(Vertex v, std::uint32_t level) const { return cells_[level - 1][v]; }
  std::span<const CellId> cells_at(std::uint32_t level) const { return cells_[level - 1]; }
  CellId parent(std::uint32_t level, CellId c) const { return parents_[level - 1][c]; }
  const std::vector<std::vector<CellId>>& parent_maps() const { return parents_; }

  std::uint32_t boundary_level(Vertex v) const { return boundary_level_[v]; }

  // Vertices of a level-1 cell, ascending.
  std::span<const Vertex> members(CellId level1_cell) const {
    return {members_.data() + member_begin_[level1_cell],
            members_.data() + member_begin_[level1_cell + 1]};
  }
  // Level-(l-1) subcells of a level-l cell, ascending; l >= 2.
  std::span<const CellId> children(std::uint32_t level, CellId c) const {
    const auto& begin = child_begin_[level - 2];
    return {children_[level - 2].data() + begin[c], children_[level - 2].data() + begin[c + 1]};
  }

 private:
  LevelSpec spec_;
  std::vector<std::vector<CellId>> cells_;
  std::vector<std::vector<CellId>> parents_;
  std::vector<std::uint8_t> boundary_level_;
  std::vector<std::uint32_t> member_begin_;
  std::vector<Vertex> members_;
  std::vector<std::vector<std::uint32_t>> child_begin_;
  std::vector<std::vector<CellId>> children_;
};

// Boundary vertices of one level, grouped by cell. A vertex's slot is its
// position in `vertices`; overlay arrays are indexed by slot.
struct LevelBoundary {
  std::vector<Vertex> vertices;          // sorted by (cell, vertex id)
  std::vector<std::uint32_t> cell_begin;  // |C^l| + 1 entries
  std::vector<std::uint32_t> slot_of;     // per vertex, kNoSlot if not boundary here
  std::vector<ArcInput> arcs;             // arcs whose endpoints lie in different cells

  std::uint32_t slot(Vertex v) const { return slot_of[v]; }
  std::span<const Vertex> roster(CellId c) const {
    return {vertices.data() + cell_begin[c], vertices.data() + cell_begin[c + 1]};
  }
};

class BoundaryClassification {
 public:
  BoundaryClassification() = default;
  explicit BoundaryClassification(std::vector<LevelBoundary> levels) : levels_(std::move(levels)) {}
  const LevelBoundary& level(std::uint32_t l) const { return levels_[l - 1]; }
  std::uint32_t levels() const { return static_cast<std::uint32_t>(levels_.size()); }

 private:
  std::vector<LevelBoundary> levels_;
};

BoundaryClassification classify_boundaries(const Graph& g, const PartitionHierarchy& h);

// One level-1 cell id per vertex per line, preceded by an optional
// "s levels <L> <|C^1|> ... <|C^L|>" header. A line may carry the full cell
// chain "c1 c2 ... cL"; with a single column, parents are induced by grouping
// consecutive cell ids: parent = c / ceil(|C^l| / |C^{l+1}|).
PartitionHierarchy load_partition_file(std::istream& in, const Graph& g, LevelSpec level_spec = {});

// Recursive coordinate bisection: every split cuts the wider bounding-box axis
// (x on ties) at the lower median, vertices equal to the median going to the
// lower side. Cell counts must be powers of two with power-of-two ratios.
PartitionHierarchy bisect_partition(const Graph& g, const Coordinates& coords, const LevelSpec& spec);

// Same cells, vertices relabeled by p (g must already be the permuted graph).
PartitionHierarchy apply_permutation(const PartitionHierarchy& h, const Graph& permuted,
                                     const NodePermutation& p);

// Border vertices of higher levels first, then by level-1 cell, then by old id.
NodePermutation level_ordering(const PartitionHierarchy& h);

}  // namespace salt
