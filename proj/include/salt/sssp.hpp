#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "salt/index.hpp"
#include "salt/search.hpp"
#include "salt/union_graph.hpp"

namespace salt {

// Targets plus every cell, at every level, that contains one of them.
class TargetSet {
 public:
  // Throws EmptyTargetsError for an empty list, RangeError for a bad id.
  TargetSet(std::span<const Vertex> targets, const PartitionHierarchy& h);

  std::span<const Vertex> targets() const { return targets_; }
  bool contains_cell(std::uint32_t level, CellId c) const { return cells_[level - 1][c] != 0; }

 private:
  std::vector<Vertex> targets_;
  std::vector<std::vector<std::uint8_t>> cells_;
};

// Two-phase single-source search: an overlay search from s, then a sweep
// down the levels relaxing the downward arcs of each cell in ascending cell
// order. One engine per thread.
class SsspEngine {
 public:
  explicit SsspEngine(const SaltIndex& index);

  // Exact distances from s (direction forward) or to s (reverse).
  std::vector<Weight> one_to_all(Vertex s, Direction direction = Direction::forward, unsigned threads = 1);
  // Every vertex within `threshold` of s, ascending by (distance, vertex).
  std::vector<std::pair<Vertex, Weight>> range(Vertex s, Weight threshold, Direction direction = Direction::forward);
  // Distances to each target, in the order given.
  std::vector<std::pair<Vertex, Weight>> one_to_many(Vertex s, const TargetSet& targets,
                                                     Direction direction = Direction::forward);

  std::uint64_t last_settled() const { return settled_; }

 private:
  void upward(Vertex s, Direction direction, Weight limit);
  template <typename CellFilter>
  void sweep(Direction direction, CellFilter&& keep, unsigned threads);

  const SaltIndex* index_;
  LabelStore labels_;
  MinHeap heap_;
  LevelScope scope_;
  std::vector<Weight> dist_;
  std::uint64_t settled_ = 0;
};

}  // namespace salt
