#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "salt/index.hpp"
#include "salt/landmarks.hpp"
#include "salt/search.hpp"
#include "salt/union_graph.hpp"

namespace salt {

// Object vertices (deduplicated, ascending) with their level-1 cells and
// liveness flags.
class ObjectSet {
 public:
  ObjectSet(std::span<const Vertex> vertices, const PartitionHierarchy& h);

  std::uint32_t size() const { return static_cast<std::uint32_t>(vertices_.size()); }
  Vertex vertex(std::uint32_t i) const { return vertices_[i]; }
  CellId cell(std::uint32_t i) const { return cells_[i]; }
  std::span<const Vertex> vertices() const { return vertices_; }

  bool alive(std::uint32_t i) const { return alive_[i] != 0; }
  void set_alive(std::uint32_t i, bool a) { alive_[i] = a; }
  void revive_all() { alive_.assign(vertices_.size(), 1); }
  std::uint32_t alive_count() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<CellId> cells_;
  std::vector<std::uint8_t> alive_;
};

// k-th smallest upper_bound(s, o) over the objects. Throws
// InsufficientObjectsError when k is 0 or exceeds the object count.
Weight kth_lowest_upper_bound(const LandmarkTable& table, Vertex s, const ObjectSet& objects, std::uint32_t k);

struct PruningStats {
  Weight kth_upper_bound = kInfinity;
  std::uint32_t alive = 0;
  double pruned_fraction = 0.0;
};

// Keeps alive exactly the objects with lower_bound(s, o) <= k-th lowest upper bound.
PruningStats pruning_phase(const LandmarkTable& table, Vertex s, ObjectSet& objects, std::uint32_t k);

struct KnnOptions {
  bool reload = true;
};

struct KnnResult {
  std::vector<std::pair<Vertex, Weight>> neighbors;  // ascending by (distance, vertex)
  PruningStats pruning;
  std::uint64_t settled = 0;
};

// Baseline: Dijkstra from s on the forward graph until k objects are
// settled. Same ordering and tie rule as KnnEngine.
std::vector<std::pair<Vertex, Weight>> knn_dijkstra(const Graph& g, Vertex s, const ObjectSet& objects,
                                                     std::uint32_t k, std::uint64_t* settled = nullptr);

// Multi-source landmark-guided search on the reverse graph from the alive
// objects toward s, one nearest neighbor per round. One engine per thread.
class KnnEngine {
 public:
  explicit KnnEngine(const SaltIndex& index);

  // k larger than the object count ranks every object; unreachable objects
  // are never reported.
  KnnResult query(Vertex s, std::span<const Vertex> objects, std::uint32_t k, KnnOptions options = {});
  KnnResult query(Vertex s, ObjectSet& objects, std::uint32_t k, KnnOptions options = {});

  // Drops the labels that originate at `removed`, unsettles the rest and
  // rebuilds the queue from them. Exposed for inspection in tests.
  void reload_queue(Vertex removed, Vertex s);
  const LabelStore& labels() const { return labels_; }

 private:
  void seed_sources(const ObjectSet& objects, Vertex s);
  bool search(Vertex s);  // true when s got settled
  std::int64_t key(Vertex v, Weight d, Vertex s);

  const SaltIndex* index_;
  LabelStore labels_;
  MinHeap heap_;
  LevelScope scope_;
  std::vector<std::int64_t> potential_;
  std::vector<std::uint32_t> potential_stamp_;
  std::uint32_t potential_generation_ = 0;
  std::uint64_t settled_ = 0;
};

}  // namespace salt
