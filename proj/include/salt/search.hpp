#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <tuple>
#include <vector>

#include "salt/types.hpp"

namespace salt {

// Per-vertex labels with O(1) reset between queries (generation stamps).
class LabelStore {
 public:
  void reset(std::uint32_t vertex_count) {
    if (stamp_.size() != vertex_count || generation_ == UINT32_MAX) {
      stamp_.assign(vertex_count, 0);
      settled_.assign(vertex_count, 0);
      dist_.resize(vertex_count);
      parent_.resize(vertex_count);
      origin_.resize(vertex_count);
      generation_ = 0;
    }
    ++generation_;
    touched_.clear();
  }

  bool labeled(Vertex v) const { return stamp_[v] == generation_; }
  Weight dist(Vertex v) const { return labeled(v) ? dist_[v] : kInfinity; }
  Vertex parent(Vertex v) const { return labeled(v) ? parent_[v] : kNoVertex; }
  Vertex origin(Vertex v) const { return labeled(v) ? origin_[v] : kNoVertex; }
  bool settled(Vertex v) const { return labeled(v) && settled_[v] == generation_; }

  void set(Vertex v, Weight d, Vertex parent, Vertex origin = kNoVertex) {
    if (!labeled(v)) {
      stamp_[v] = generation_;
      settled_[v] = 0;
      touched_.push_back(v);
    }
    dist_[v] = d;
    parent_[v] = parent;
    origin_[v] = origin;
  }
  void settle(Vertex v) { settled_[v] = generation_; }
  void unsettle(Vertex v) { settled_[v] = 0; }
  // Drops the label; the vertex stays in touched() and reads as unlabeled.
  void erase(Vertex v) { stamp_[v] = generation_ - 1; }

  // Every vertex labeled since the last reset (erased ones included).
  std::span<const Vertex> touched() const { return touched_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> settled_;
  std::vector<Weight> dist_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> origin_;
  std::vector<Vertex> touched_;
  std::uint32_t generation_ = 0;
};

// Binary min-heap with lazy deletion; ties break on (tie, vertex).
struct HeapEntry {
  std::int64_t key;
  std::uint32_t tie;
  Vertex vertex;
  friend bool operator>(const HeapEntry& a, const HeapEntry& b) {
    return std::tie(a.key, a.tie, a.vertex) > std::tie(b.key, b.tie, b.vertex);
  }
};

class MinHeap {
 public:
  void clear() { items_.clear(); }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const HeapEntry& top() const { return items_.front(); }
  void push(std::int64_t key, Vertex v, std::uint32_t tie = 0) {
    items_.push_back({key, tie, v});
    std::push_heap(items_.begin(), items_.end(), std::greater<>{});
  }
  HeapEntry pop() {
    std::pop_heap(items_.begin(), items_.end(), std::greater<>{});
    HeapEntry e = items_.back();
    items_.pop_back();
    return e;
  }

 private:
  std::vector<HeapEntry> items_;
};

}  // namespace salt
