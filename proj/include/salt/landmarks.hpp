#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "salt/graph.hpp"
#include "salt/partition.hpp"

namespace salt {

// Stored in place of distances that are unreachable or >= 2^30, so negation
// and subtraction of two slots always fit in 32 signed bits.
inline constexpr std::int32_t kLandmarkUnreachable = 1 << 30;

// Landmark distances, one record of 2|S| slots per vertex:
//   slot[2|S| i + j]       = -d(L_j, i)   (from-landmark, negated)
//   slot[2|S| i + |S| + j] =  d(i, L_j)   (to-landmark)
class LandmarkTable {
 public:
  LandmarkTable() = default;
  LandmarkTable(std::vector<Vertex> landmarks, std::uint32_t vertex_count, std::vector<std::int32_t> records,
                std::uint64_t graph_fingerprint);

  std::uint32_t landmark_count() const { return static_cast<std::uint32_t>(landmarks_.size()); }
  std::uint32_t vertex_count() const { return vertex_count_; }
  std::span<const Vertex> landmarks() const { return landmarks_; }
  std::span<const std::int32_t> records() const { return records_; }
  std::uint64_t graph_fingerprint() const { return fingerprint_; }
  void set_graph_fingerprint(std::uint64_t f) { fingerprint_ = f; }

  std::size_t from_index(Vertex i, std::uint32_t j) const { return 2 * std::size_t{landmark_count()} * i + j; }
  std::size_t to_index(Vertex i, std::uint32_t j) const { return from_index(i, j) + landmark_count(); }

  std::span<const std::int32_t> record(Vertex v) const {
    return std::span<const std::int32_t>(records_).subspan(2 * std::size_t{landmark_count()} * v,
                                                           2 * std::size_t{landmark_count()});
  }
  std::span<const std::int32_t> from_slots(Vertex v) const { return record(v).first(landmark_count()); }
  std::span<const std::int32_t> to_slots(Vertex v) const { return record(v).last(landmark_count()); }

  friend bool operator==(const LandmarkTable& a, const LandmarkTable& b) {
    return a.landmarks_ == b.landmarks_ && a.vertex_count_ == b.vertex_count_ && a.records_ == b.records_;
  }

 private:
  std::vector<Vertex> landmarks_;
  std::uint32_t vertex_count_ = 0;
  std::vector<std::int32_t> records_;
  std::uint64_t fingerprint_ = 0;
};

// Partition corners: per cell of the chosen level, the vertices maximizing
// x+y, x-y, -x+y and -x-y; picked round-robin (corner type outer, cells
// inner). Falls back to farthest-point selection without coordinates, and
// tops up with it when the corners run out.
std::vector<Vertex> select_partition_corners(const Graph& g, const PartitionHierarchy& h,
                                             const Coordinates& coords, std::uint32_t count,
                                             std::uint64_t seed = 1);

// Greedy farthest-point selection, seeded by the farthest vertex from a
// random start.
std::vector<Vertex> select_farthest(const Graph& g, std::uint32_t count, std::uint64_t seed,
                                    std::vector<Vertex> chosen = {});

// Exact one-to-all distances from a source in the given direction.
using OneToAllFn = std::function<std::vector<Weight>(Vertex, Direction)>;

LandmarkTable build_landmark_table(const Graph& g, std::span<const Vertex> landmarks, const OneToAllFn& engine,
                                   unsigned threads = 0);
// Same, with plain Dijkstra on g and its reverse.
LandmarkTable build_landmark_table(const Graph& g, std::span<const Vertex> landmarks, unsigned threads = 0);

// max(0, max over slots of rec_u - rec_v); sentinel terms contribute 0.
Weight lower_bound(const LandmarkTable& t, Vertex u, Vertex v);
// min over j of to(u, j) - from(v, j); kInfinity when no term is finite.
Weight upper_bound(const LandmarkTable& t, Vertex u, Vertex v);

// Unidirectional potential toward `target` for a search in `direction`:
// forward searches bound d(v, target), reverse ones d(target, v).
inline Weight potential(const LandmarkTable& t, Vertex v, Vertex target, Direction direction) {
  return direction == Direction::forward ? lower_bound(t, v, target) : lower_bound(t, target, v);
}

// Average potential pair for a bidirectional s-t search. Values are kept
// doubled so they stay integral: forward_x2(v) = pi_f(v) - pi_r(v).
struct AveragePotential {
  const LandmarkTable* table;
  Vertex s;
  Vertex t;

  std::int64_t forward_x2(Vertex v) const {
    return std::int64_t{lower_bound(*table, v, t)} - std::int64_t{lower_bound(*table, s, v)};
  }
  std::int64_t backward_x2(Vertex v) const { return -forward_x2(v); }
  double forward(Vertex v) const { return static_cast<double>(forward_x2(v)) / 2.0; }
  double backward(Vertex v) const { return -forward(v); }
};

// Keeps the k smallest values pushed; top() is the k-th smallest once full.
class BoundedMaxHeap {
 public:
  explicit BoundedMaxHeap(std::size_t capacity) : capacity_(capacity) {}
  void push(Weight value);
  std::size_t size() const { return items_.size(); }
  bool full() const { return items_.size() == capacity_; }
  Weight top() const { return items_.front(); }

 private:
  std::size_t capacity_;
  std::vector<Weight> items_;
};

}  // namespace salt
