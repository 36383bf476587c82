#include "salt/sssp.hpp"

#include <algorithm>

#include "salt/parallel.hpp"

namespace salt {

TargetSet::TargetSet(std::span<const Vertex> targets, const PartitionHierarchy& h)
    : targets_(targets.begin(), targets.end()) {
  if (targets_.empty()) throw EmptyTargetsError("target set is empty");
  cells_.resize(h.levels());
  for (std::uint32_t l = 1; l <= h.levels(); ++l) cells_[l - 1].assign(h.cell_count(l), 0);
  for (Vertex t : targets_) {
    if (t >= h.vertex_count()) throw RangeError("target vertex out of range");
    for (std::uint32_t l = 1; l <= h.levels(); ++l) cells_[l - 1][h.cell(t, l)] = 1;
  }
}

SsspEngine::SsspEngine(const SaltIndex& index) : index_(&index) {}

// Phase 1: Dijkstra from s over the union graph anchored at s alone; labels
// beyond `limit` are neither settled nor expanded.
void SsspEngine::upward(Vertex s, Direction direction, Weight limit) {
  const SaltIndex& x = *index_;
  x.check_overlay(direction);
  const std::uint32_t n = x.vertex_count();
  if (s >= n) throw RangeError("source vertex out of range");
  const UnionGraph ug{&x.graph(direction), &x.hierarchy(), &x.boundary(), &x.customization(direction).overlay,
                      false};
  scope_.reset(x.hierarchy());
  scope_.add_anchor(s);
  labels_.reset(n);
  heap_.clear();
  settled_ = 0;
  labels_.set(s, 0, kNoVertex);
  heap_.push(0, s);
  while (!heap_.empty()) {
    const HeapEntry e = heap_.pop();
    const Vertex u = e.vertex;
    const Weight du = labels_.dist(u);
    if (labels_.settled(u) || static_cast<Weight>(e.key) != du) continue;
    if (du > limit) break;
    labels_.settle(u);
    ++settled_;
    ug.for_each_arc(u, scope_.level_of(u), scope_, [&](Vertex w, Weight wt) {
      const Weight nd = add_saturated(du, wt);
      if (nd < labels_.dist(w)) {
        labels_.set(w, nd, u);
        heap_.push(nd, w);
      }
    });
  }
  dist_.assign(n, kInfinity);
  for (Vertex v : labels_.touched()) dist_[v] = labels_.dist(v);
}

// Phase 2: for l = L..1, every cell passing `keep(l, c)` relaxes the downward
// arcs of its labeled level-l boundary vertices. Cells of one level touch
// disjoint vertex sets, so they may run concurrently.
template <typename CellFilter>
void SsspEngine::sweep(Direction direction, CellFilter&& keep, unsigned threads) {
  const SaltIndex& x = *index_;
  const PartitionHierarchy& h = x.hierarchy();
  const DownwardGraph& down = x.customization(direction).downward;
  for (std::uint32_t l = h.levels(); l >= 1; --l) {
    const LevelBoundary& b = x.boundary().level(l);
    const SlotArcs& arcs = down.arcs(l);
    auto cell_job = [&](unsigned, std::size_t ci) {
      const auto c = static_cast<CellId>(ci);
      if (!keep(l, c)) return;
      for (std::uint32_t slot = b.cell_begin[c]; slot < b.cell_begin[c + 1]; ++slot) {
        const Weight db = dist_[b.vertices[slot]];
        if (db == kInfinity) continue;
        for (std::uint32_t a = arcs.begin[slot]; a < arcs.begin[slot + 1]; ++a) {
          const Weight nd = add_saturated(db, arcs.weight[a]);
          Weight& dv = dist_[arcs.head[a]];
          if (nd < dv) dv = nd;
        }
      }
    };
    parallel_for(h.cell_count(l), threads, cell_job);
  }
}

std::vector<Weight> SsspEngine::one_to_all(Vertex s, Direction direction, unsigned threads) {
  upward(s, direction, kInfinity);
  sweep(direction, [](std::uint32_t, CellId) { return true; }, threads);
  return dist_;
}

std::vector<std::pair<Vertex, Weight>> SsspEngine::range(Vertex s, Weight threshold, Direction direction) {
  upward(s, direction, threshold);
  const SaltIndex& x = *index_;
  // A cell is swept only if one of its boundary vertices is within reach.
  sweep(
      direction,
      [&](std::uint32_t l, CellId c) {
        const LevelBoundary& b = x.boundary().level(l);
        for (std::uint32_t slot = b.cell_begin[c]; slot < b.cell_begin[c + 1]; ++slot)
          if (dist_[b.vertices[slot]] <= threshold) return true;
        return false;
      },
      1);
  std::vector<std::pair<Vertex, Weight>> out;
  for (Vertex v = 0; v < dist_.size(); ++v)
    if (dist_[v] <= threshold) out.emplace_back(v, dist_[v]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  });
  return out;
}

std::vector<std::pair<Vertex, Weight>> SsspEngine::one_to_many(Vertex s, const TargetSet& targets,
                                                                Direction direction) {
  upward(s, direction, kInfinity);
  sweep(direction, [&](std::uint32_t l, CellId c) { return targets.contains_cell(l, c); }, 1);
  std::vector<std::pair<Vertex, Weight>> out;
  out.reserve(targets.targets().size());
  for (Vertex t : targets.targets()) out.emplace_back(t, dist_[t]);
  return out;
}

}  // namespace salt
