#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "salt/graph.hpp"
#include "salt/landmarks.hpp"
#include "salt/overlay.hpp"
#include "salt/partition.hpp"

namespace salt {

struct IndexOptions {
  std::uint32_t landmark_count = 24;
  bool arc_reduction = true;
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t seed = 1;
  // Relabel vertices so higher-level boundary vertices get smaller ids.
  bool reorder = false;
};

struct BuildTimings {
  double customize_ms = 0;  // both directions
  double landmarks_ms = 0;
};

// Everything a query needs: both graph directions, the partition, one
// customization per direction and the landmark table. Immutable; a metric
// change produces a new index (recustomize) and callers swap it in.
class SaltIndex {
 public:
  // Partition-corner landmarks (farthest-point without coordinates), distance
  // rows computed with the index's own one-to-all search.
  static SaltIndex build(Graph g, PartitionHierarchy h, const Coordinates& coords, IndexOptions options = {});

  // Reassembles a saved index. Throws StaleIndexError when the parts do not
  // belong to g.
  static SaltIndex assemble(Graph g, PartitionHierarchy h, Customization forward, Customization reverse,
                            LandmarkTable table, NodePermutation permutation, IndexOptions options = {});

  // Same topology, partition and landmark vertices; customization and
  // landmark distances recomputed. Throws MetricError on a length mismatch.
  SaltIndex recustomize(std::vector<Weight> weights) const;

  const Graph& graph(Direction d = Direction::forward) const { return graphs_[static_cast<int>(d)]; }
  const PartitionHierarchy& hierarchy() const { return *hierarchy_; }
  const BoundaryClassification& boundary() const { return *boundary_; }
  const Customization& customization(Direction d) const { return customizations_[static_cast<int>(d)]; }
  const LandmarkTable& landmarks() const { return table_; }
  const IndexOptions& options() const { return options_; }
  // new id -> original input id mapping; identity unless built with reorder.
  const NodePermutation& permutation() const { return permutation_; }
  std::uint32_t vertex_count() const { return graphs_[0].vertex_count(); }
  // Wall-clock cost of the last build or recustomize.
  const BuildTimings& timings() const { return timings_; }

  // Throw StaleIndexError when an overlay or the landmark table was computed
  // for different weights than the current graph.
  void check_overlay(Direction d) const;
  void check_landmarks() const;

 private:
  SaltIndex() = default;
  void customize_all();
  void compute_landmarks(std::span<const Vertex> landmarks);

  std::array<Graph, 2> graphs_;
  std::shared_ptr<const PartitionHierarchy> hierarchy_;
  std::shared_ptr<const BoundaryClassification> boundary_;
  std::array<std::shared_ptr<const Customizer>, 2> customizers_;
  std::array<Customization, 2> customizations_;
  LandmarkTable table_;
  NodePermutation permutation_;
  IndexOptions options_;
  BuildTimings timings_;
};

}  // namespace salt
