#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "salt/types.hpp"

namespace salt {

struct Point {
  std::int32_t x = 0;
  std::int32_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

using Coordinates = std::vector<Point>;

enum class MetricTag : std::uint8_t { travel_time = 0, travel_distance = 1 };

const char* to_string(MetricTag tag);
MetricTag parse_metric_tag(const std::string& text);  // "tt" | "td"

// Per-arc weights aligned with a graph's adjacency order.
struct Metric {
  MetricTag tag = MetricTag::travel_time;
  std::vector<Weight> weights;
};

struct ArcInput {
  Vertex tail = 0;
  Vertex head = 0;
  Weight weight = 0;
  friend bool operator==(const ArcInput&, const ArcInput&) = default;
};

// Compact adjacency (CSR) over positive 32-bit weights. Immutable once built.
//
// Adjacency is canonical: arcs of a vertex are sorted by head id, self-loops are
// dropped and parallel arcs keep their minimum weight. Two graphs built from the
// same arc multiset are therefore identical, which is what aligns separately
// loaded metrics of one network.
class Graph {
 public:
  Graph() = default;

  static Graph from_arcs(std::uint32_t vertex_count, std::vector<ArcInput> arcs);

  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(offsets_.size()) - 1; }
  std::uint32_t arc_count() const { return static_cast<std::uint32_t>(heads_.size()); }

  ArcId first_arc(Vertex v) const { return offsets_[v]; }
  ArcId end_arc(Vertex v) const { return offsets_[v + 1]; }
  Vertex head(ArcId a) const { return heads_[a]; }
  Weight weight(ArcId a) const { return weights_[a]; }
  std::uint32_t out_degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const std::uint32_t> offsets() const { return offsets_; }
  std::span<const Vertex> heads() const { return heads_; }
  std::span<const Weight> weights() const { return weights_; }

  // Hash of topology and weights; indexes remember it to detect stale use.
  std::uint64_t fingerprint() const { return fingerprint_; }

  // Same topology, new weights. Throws MetricError on length mismatch or a
  // zero weight.
  Graph with_weights(std::vector<Weight> weights) const;

  std::vector<ArcInput> arcs() const;

  // Raw constructor for snapshot loading; validates the CSR invariants.
  static Graph from_csr(std::vector<std::uint32_t> offsets, std::vector<Vertex> heads,
                        std::vector<Weight> weights);

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.heads_ == b.heads_ && a.weights_ == b.weights_;
  }

 private:
  void seal();

  std::vector<std::uint32_t> offsets_{0};
  std::vector<Vertex> heads_;
  std::vector<Weight> weights_;
  std::uint64_t fingerprint_ = 0;
};

// (u,v,w) in g  <=>  (v,u,w) in build_reverse(g).
Graph build_reverse(const Graph& g);

class NodePermutation {
 public:
  static NodePermutation identity(std::uint32_t n);
  // Throws PermutationError unless new_to_old is a bijection on [0, n).
  static NodePermutation from_new_to_old(std::vector<Vertex> new_to_old);
  static NodePermutation from_old_to_new(std::vector<Vertex> old_to_new);

  std::uint32_t size() const { return static_cast<std::uint32_t>(new_to_old_.size()); }
  Vertex to_new(Vertex old_id) const { return old_to_new_[old_id]; }
  Vertex to_old(Vertex new_id) const { return new_to_old_[new_id]; }
  std::span<const Vertex> old_to_new() const { return old_to_new_; }
  std::span<const Vertex> new_to_old() const { return new_to_old_; }

 private:
  std::vector<Vertex> old_to_new_;
  std::vector<Vertex> new_to_old_;
};

Graph apply_permutation(const Graph& g, const NodePermutation& p);
Coordinates apply_permutation(const Coordinates& coords, const NodePermutation& p);

}  // namespace salt
