#include "salt/knn.hpp"

#include <algorithm>

namespace salt {

ObjectSet::ObjectSet(std::span<const Vertex> vertices, const PartitionHierarchy& h)
    : vertices_(vertices.begin(), vertices.end()) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  cells_.reserve(vertices_.size());
  for (Vertex v : vertices_) {
    if (v >= h.vertex_count()) throw RangeError("object vertex out of range");
    cells_.push_back(h.levels() == 0 ? 0 : h.cell(v, 1));
  }
  alive_.assign(vertices_.size(), 1);
}

std::uint32_t ObjectSet::alive_count() const {
  return static_cast<std::uint32_t>(std::count(alive_.begin(), alive_.end(), 1));
}

Weight kth_lowest_upper_bound(const LandmarkTable& table, Vertex s, const ObjectSet& objects, std::uint32_t k) {
  if (k == 0 || k > objects.size())
    throw InsufficientObjectsError("need at least k >= 1 objects, got " + std::to_string(objects.size()) +
                                   " for k = " + std::to_string(k));
  BoundedMaxHeap q(k);
  for (Vertex o : objects.vertices()) q.push(upper_bound(table, s, o));
  return q.top();
}

PruningStats pruning_phase(const LandmarkTable& table, Vertex s, ObjectSet& objects, std::uint32_t k) {
  PruningStats stats;
  stats.kth_upper_bound = kth_lowest_upper_bound(table, s, objects, k);
  for (std::uint32_t i = 0; i < objects.size(); ++i) {
    const bool keep = lower_bound(table, s, objects.vertex(i)) <= stats.kth_upper_bound;
    objects.set_alive(i, keep);
    stats.alive += keep;
  }
  stats.pruned_fraction = 1.0 - static_cast<double>(stats.alive) / objects.size();
  return stats;
}

std::vector<std::pair<Vertex, Weight>> knn_dijkstra(const Graph& g, Vertex s, const ObjectSet& objects,
                                                     std::uint32_t k, std::uint64_t* settled) {
  if (s >= g.vertex_count()) throw RangeError("query vertex out of range");
  std::vector<std::pair<Vertex, Weight>> out;
  std::uint64_t count = 0;
  k = std::min(k, objects.size());
  if (k > 0) {
    LabelStore labels;
    MinHeap heap;
    labels.reset(g.vertex_count());
    labels.set(s, 0, kNoVertex);
    heap.push(0, s);
    const auto is_object = [&](Vertex v) {
      return std::binary_search(objects.vertices().begin(), objects.vertices().end(), v);
    };
    while (!heap.empty()) {
      const HeapEntry e = heap.pop();
      const Vertex u = e.vertex;
      const Weight du = labels.dist(u);
      if (labels.settled(u) || static_cast<Weight>(e.key) != du) continue;
      labels.settle(u);
      ++count;
      if (is_object(u)) {
        out.emplace_back(u, du);
        if (out.size() == k) break;
      }
      for (ArcId a = g.first_arc(u); a < g.end_arc(u); ++a) {
        const Vertex w = g.head(a);
        const Weight nd = add_saturated(du, g.weight(a));
        if (nd < labels.dist(w)) {
          labels.set(w, nd, u);
          heap.push(nd, w);
        }
      }
    }
  }
  if (settled) *settled = count;
  return out;
}

KnnEngine::KnnEngine(const SaltIndex& index) : index_(&index) {}

// Labels are (distance, origin) pairs compared lexicographically and the
// queue key is (distance + potential, origin, vertex), so the label settled at
// s names the nearest object with ties going to the smaller vertex id.
std::int64_t KnnEngine::key(Vertex v, Weight d, Vertex s) {
  if (potential_stamp_[v] != potential_generation_) {
    potential_stamp_[v] = potential_generation_;
    potential_[v] = lower_bound(index_->landmarks(), s, v);
  }
  return std::int64_t{d} + potential_[v];
}

void KnnEngine::seed_sources(const ObjectSet& objects, Vertex s) {
  labels_.reset(index_->vertex_count());
  heap_.clear();
  for (std::uint32_t i = 0; i < objects.size(); ++i) {
    if (!objects.alive(i)) continue;
    const Vertex o = objects.vertex(i);
    labels_.set(o, 0, kNoVertex, o);
    heap_.push(key(o, 0, s), o, o);
  }
}

bool KnnEngine::search(Vertex s) {
  const SaltIndex& x = *index_;
  const UnionGraph ug{&x.graph(Direction::reverse), &x.hierarchy(), &x.boundary(),
                      &x.customization(Direction::reverse).overlay, false};
  while (!heap_.empty()) {
    const HeapEntry e = heap_.pop();
    const Vertex u = e.vertex;
    if (!labels_.labeled(u) || labels_.settled(u)) continue;
    const Weight du = labels_.dist(u);
    const Vertex origin = labels_.origin(u);
    if (e.tie != origin || e.key != key(u, du, s)) continue;
    labels_.settle(u);
    ++settled_;
    if (u == s) return true;
    ug.for_each_arc(u, scope_.level_of(u), scope_, [&](Vertex w, Weight wt) {
      const Weight nd = add_saturated(du, wt);
      if (nd == kInfinity) return;
      if (labels_.labeled(w) && std::tie(nd, origin) >= std::make_tuple(labels_.dist(w), labels_.origin(w))) return;
      labels_.set(w, nd, u, origin);
      heap_.push(key(w, nd, s), w, origin);
    });
  }
  return false;
}

void KnnEngine::reload_queue(Vertex removed, Vertex s) {
  heap_.clear();
  // touched() may list a vertex that was erased and relabeled; dedupe by
  // only handling labeled vertices whose label is still live.
  for (Vertex v : labels_.touched()) {
    if (!labels_.labeled(v)) continue;
    if (labels_.origin(v) == removed) {
      labels_.erase(v);
      continue;
    }
    labels_.unsettle(v);
  }
  for (Vertex v : labels_.touched())
    if (labels_.labeled(v) && !labels_.settled(v)) {
      heap_.push(key(v, labels_.dist(v), s), v, labels_.origin(v));
      labels_.settle(v);  // marks v as queued so duplicates in touched() push once
    }
  for (Vertex v : labels_.touched())
    if (labels_.labeled(v)) labels_.unsettle(v);
}

KnnResult KnnEngine::query(Vertex s, std::span<const Vertex> objects, std::uint32_t k, KnnOptions options) {
  ObjectSet set(objects, index_->hierarchy());
  return query(s, set, k, options);
}

KnnResult KnnEngine::query(Vertex s, ObjectSet& objects, std::uint32_t k, KnnOptions options) {
  const SaltIndex& x = *index_;
  if (s >= x.vertex_count()) throw RangeError("query vertex out of range");
  x.check_overlay(Direction::reverse);
  x.check_landmarks();
  KnnResult result;
  objects.revive_all();
  if (objects.size() == 0 || k == 0) return result;
  k = std::min(k, objects.size());
  result.pruning = pruning_phase(x.landmarks(), s, objects, k);

  const std::uint32_t n = x.vertex_count();
  if (potential_stamp_.size() != n || potential_generation_ == UINT32_MAX) {
    potential_stamp_.assign(n, 0);
    potential_.resize(n);
    potential_generation_ = 0;
  }
  ++potential_generation_;

  // The search graph keeps the same anchors for the whole query: s plus every
  // object that survived pruning.
  scope_.reset(x.hierarchy());
  scope_.add_anchor(s);
  for (std::uint32_t i = 0; i < objects.size(); ++i)
    if (objects.alive(i)) scope_.add_anchor(objects.vertex(i));

  settled_ = 0;
  seed_sources(objects, s);
  for (std::uint32_t round = 0; round < k; ++round) {
    if (!search(s)) break;
    const Vertex nn = labels_.origin(s);
    result.neighbors.emplace_back(nn, labels_.dist(s));
    const auto it = std::lower_bound(objects.vertices().begin(), objects.vertices().end(), nn);
    objects.set_alive(static_cast<std::uint32_t>(it - objects.vertices().begin()), false);
    if (round + 1 == k) break;
    if (options.reload)
      reload_queue(nn, s);
    else
      seed_sources(objects, s);
  }
  result.settled = settled_;
  return result;
}

}  // namespace salt
