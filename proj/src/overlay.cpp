#include "salt/overlay.hpp"

#include <algorithm>
#include <tuple>

#include "salt/parallel.hpp"

namespace salt {

namespace {

SlotArcs transpose(const SlotArcs& out, const LevelBoundary& boundary) {
  const auto slots = static_cast<std::uint32_t>(boundary.vertices.size());
  SlotArcs in;
  in.begin.assign(std::size_t{slots} + 1, 0);
  for (Vertex h : out.head) ++in.begin[boundary.slot(h) + 1];
  for (std::uint32_t s = 0; s < slots; ++s) in.begin[s + 1] += in.begin[s];
  in.head.resize(out.head.size());
  in.weight.resize(out.head.size());
  std::vector<std::uint32_t> at(in.begin.begin(), in.begin.end() - 1);
  // Tails visited in slot order, so every in-list comes out sorted by tail.
  for (std::uint32_t s = 0; s < slots; ++s)
    for (std::uint32_t a = out.begin[s]; a < out.begin[s + 1]; ++a) {
      const std::uint32_t pos = at[boundary.slot(out.head[a])]++;
      in.head[pos] = boundary.vertices[s];
      in.weight[pos] = out.weight[a];
    }
  return in;
}

// Dijkstra inside one cell graph with a shortest-path tree that records
// whether a roster vertex sits strictly between the root and each vertex.
class CellSearch {
 public:
  void run(const CellGraph& g, std::uint32_t root, std::span<const std::uint8_t> is_roster) {
    const std::size_t n = g.vertices.size();
    dist_.assign(n, kInfinity);
    parent_.assign(n, kNoSlot);
    blocked_.assign(n, 0);
    settled_.clear();
    heap_.clear();
    dist_[root] = 0;
    push(0, g.vertices[root], root);
    std::vector<std::uint8_t> done(n, 0);
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
      const auto [d, global, v] = heap_.back();
      heap_.pop_back();
      if (done[v] || d != dist_[v]) continue;
      done[v] = 1;
      settled_.push_back(v);
      if (v != root) {
        const std::uint32_t p = parent_[v];
        blocked_[v] = blocked_[p] || (p != root && is_roster[p]);
      }
      for (std::uint32_t a = g.begin[v]; a < g.begin[v + 1]; ++a) {
        const std::uint32_t w = g.head[a];
        const Weight nd = add_saturated(d, g.weight[a]);
        if (nd < dist_[w]) {
          dist_[w] = nd;
          parent_[w] = v;
          push(nd, g.vertices[w], w);
        }
      }
    }
  }

  Weight dist(std::uint32_t v) const { return dist_[v]; }
  bool blocked(std::uint32_t v) const { return blocked_[v] != 0; }
  // Settled local vertices in extraction order.
  std::span<const std::uint32_t> settled() const { return settled_; }

 private:
  using Entry = std::tuple<Weight, Vertex, std::uint32_t>;  // ties: smaller vertex id first
  void push(Weight d, Vertex global, std::uint32_t local) {
    heap_.emplace_back(d, global, local);
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
  }

  std::vector<Weight> dist_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> blocked_;
  std::vector<std::uint32_t> settled_;
  std::vector<Entry> heap_;
};

struct RosterArcs {
  std::vector<std::pair<Vertex, Weight>> clique;
  std::vector<std::pair<Vertex, Weight>> down;
};

// Cliques and downward arcs of one cell, one entry per roster vertex.
std::vector<RosterArcs> process_cell(const CellGraph& g, std::span<const std::uint32_t> roster, bool reduce) {
  std::vector<std::uint8_t> is_roster(g.vertices.size(), 0);
  for (std::uint32_t r : roster) is_roster[r] = 1;
  std::vector<RosterArcs> out(roster.size());
  CellSearch search;
  for (std::size_t i = 0; i < roster.size(); ++i) {
    const std::uint32_t root = roster[i];
    search.run(g, root, is_roster);
    for (std::uint32_t r : roster)
      if (r != root && search.dist(r) != kInfinity && !(reduce && search.blocked(r)))
        out[i].clique.emplace_back(g.vertices[r], search.dist(r));
    std::sort(out[i].clique.begin(), out[i].clique.end());
    for (std::uint32_t v = 0; v < g.vertices.size(); ++v)
      if (v != root && search.dist(v) != kInfinity) out[i].down.emplace_back(g.vertices[v], search.dist(v));
  }
  return out;
}

void append(SlotArcs& arcs, const std::vector<std::pair<Vertex, Weight>>& list) {
  for (const auto& [h, w] : list) {
    arcs.head.push_back(h);
    arcs.weight.push_back(w);
  }
  arcs.begin.push_back(static_cast<std::uint32_t>(arcs.head.size()));
}

}  // namespace

OverlayIndex::OverlayIndex(Direction direction, std::uint64_t graph_fingerprint, bool arc_reduced,
                           std::vector<SlotArcs> out_arcs, const BoundaryClassification& boundary)
    : direction_(direction), fingerprint_(graph_fingerprint), arc_reduced_(arc_reduced), out_(std::move(out_arcs)) {
  if (out_.size() != boundary.levels()) throw CountError("overlay level count differs from partition");
  in_.reserve(out_.size());
  for (std::uint32_t l = 1; l <= out_.size(); ++l) {
    if (out_[l - 1].begin.size() != boundary.level(l).vertices.size() + 1)
      throw CountError("overlay slot count differs from boundary roster");
    in_.push_back(transpose(out_[l - 1], boundary.level(l)));
  }
}

std::size_t OverlayIndex::arc_count() const {
  std::size_t total = 0;
  for (const auto& l : out_) total += l.head.size();
  return total;
}

std::vector<CliqueArc> OverlayIndex::arcs(std::uint32_t level, const LevelBoundary& boundary) const {
  const SlotArcs& l = out_[level - 1];
  std::vector<CliqueArc> out;
  for (std::uint32_t s = 0; s + 1 < l.begin.size(); ++s)
    for (std::uint32_t a = l.begin[s]; a < l.begin[s + 1]; ++a)
      out.push_back({boundary.vertices[s], l.head[a], l.weight[a]});
  return out;
}

std::size_t DownwardGraph::arc_count() const {
  std::size_t total = 0;
  for (const auto& l : levels_) total += l.head.size();
  return total;
}

std::vector<CliqueArc> arc_reduced_clique(const CellGraph& cell, std::span<const std::uint32_t> roster,
                                          bool reduce) {
  const auto per_root = process_cell(cell, roster, reduce);
  std::vector<CliqueArc> out;
  for (std::size_t i = 0; i < roster.size(); ++i)
    for (const auto& [h, w] : per_root[i].clique) out.push_back({cell.vertices[roster[i]], h, w});
  std::sort(out.begin(), out.end(), [](const CliqueArc& a, const CliqueArc& b) {
    return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
  });
  return out;
}

Customizer::Customizer(const Graph& topology, Direction direction, const PartitionHierarchy& hierarchy,
                       const BoundaryClassification& boundary, CustomizeOptions options)
    : direction_(direction),
      options_(options),
      topology_offsets_(topology.offsets().begin(), topology.offsets().end()),
      topology_heads_(topology.heads().begin(), topology.heads().end()) {
  const std::uint32_t n = topology.vertex_count();
  if (hierarchy.vertex_count() != n) throw CountError("partition and graph sizes differ");
  std::vector<std::uint32_t> local(n);
  for (CellId c = 0; c < hierarchy.cell_count(1); ++c) {
    const auto members = hierarchy.members(c);
    for (std::uint32_t i = 0; i < members.size(); ++i) local[members[i]] = i;
  }
  level1_.resize(hierarchy.cell_count(1));
  const LevelBoundary& lb = boundary.level(1);
  for (CellId c = 0; c < hierarchy.cell_count(1); ++c) {
    Level1Cell& cell = level1_[c];
    const auto members = hierarchy.members(c);
    cell.graph.vertices.assign(members.begin(), members.end());
    for (Vertex u : members) {
      for (ArcId a = topology.first_arc(u); a < topology.end_arc(u); ++a) {
        const Vertex w = topology.head(a);
        if (hierarchy.cell(w, 1) != c) continue;
        cell.graph.head.push_back(local[w]);
        cell.arc_ids.push_back(a);
      }
      cell.graph.begin.push_back(static_cast<std::uint32_t>(cell.graph.head.size()));
    }
    for (Vertex b : lb.roster(c)) cell.roster.push_back(local[b]);
  }
}

Customization Customizer::run(const Graph& weighted, const PartitionHierarchy& hierarchy,
                              const BoundaryClassification& boundary) const {
  if (!std::ranges::equal(weighted.offsets(), topology_offsets_) ||
      !std::ranges::equal(weighted.heads(), topology_heads_))
    throw MetricError("graph topology differs from the customized topology");
  const std::uint32_t levels = hierarchy.levels();
  std::vector<SlotArcs> cliques(levels);
  std::vector<SlotArcs> downs(levels);

  // Level 1: Dijkstra on the level-0 arcs inside each cell.
  {
    std::vector<std::vector<RosterArcs>> per_cell(level1_.size());
    parallel_for(level1_.size(), options_.threads, [&](unsigned, std::size_t c) {
      CellGraph g = level1_[c].graph;
      g.weight.resize(level1_[c].arc_ids.size());
      for (std::size_t i = 0; i < g.weight.size(); ++i) g.weight[i] = weighted.weight(level1_[c].arc_ids[i]);
      per_cell[c] = process_cell(g, level1_[c].roster, options_.arc_reduction);
    });
    for (const auto& cell : per_cell)
      for (const RosterArcs& r : cell) {
        append(cliques[0], r.clique);
        append(downs[0], r.down);
      }
  }

  // Level l >= 2: search the level-(l-1) overlay restricted to the cell.
  std::vector<std::uint32_t> local(weighted.vertex_count(), kNoSlot);
  for (std::uint32_t l = 2; l <= levels; ++l) {
    const LevelBoundary& lower = boundary.level(l - 1);
    const LevelBoundary& upper = boundary.level(l);
    const SlotArcs& lower_cliques = cliques[l - 2];
    std::vector<std::vector<RosterArcs>> per_cell(hierarchy.cell_count(l));
    parallel_for(per_cell.size(), options_.threads, [&](unsigned, std::size_t ci) {
      const auto c = static_cast<CellId>(ci);
      CellGraph g;
      for (CellId sub : hierarchy.children(l, c))
        for (Vertex v : lower.roster(sub)) {
          local[v] = static_cast<std::uint32_t>(g.vertices.size());
          g.vertices.push_back(v);
        }
      for (Vertex u : g.vertices) {
        const std::uint32_t s = lower.slot(u);
        for (std::uint32_t a = lower_cliques.begin[s]; a < lower_cliques.begin[s + 1]; ++a) {
          g.head.push_back(local[lower_cliques.head[a]]);
          g.weight.push_back(lower_cliques.weight[a]);
        }
        for (ArcId a = weighted.first_arc(u); a < weighted.end_arc(u); ++a) {
          const Vertex w = weighted.head(a);
          if (hierarchy.cell(w, l) != c || hierarchy.cell(w, l - 1) == hierarchy.cell(u, l - 1)) continue;
          g.head.push_back(local[w]);
          g.weight.push_back(weighted.weight(a));
        }
        g.begin.push_back(static_cast<std::uint32_t>(g.head.size()));
      }
      std::vector<std::uint32_t> roster;
      for (Vertex b : upper.roster(c)) roster.push_back(local[b]);
      per_cell[c] = process_cell(g, roster, options_.arc_reduction);
    });
    for (const auto& cell : per_cell)
      for (const RosterArcs& r : cell) {
        append(cliques[l - 1], r.clique);
        append(downs[l - 1], r.down);
      }
  }

  OverlayIndex overlay(direction_, weighted.fingerprint(), options_.arc_reduction, std::move(cliques), boundary);
  return {std::move(overlay), DownwardGraph(direction_, std::move(downs))};
}

Customization customize(const Graph& g, Direction direction, const PartitionHierarchy& hierarchy,
                        const BoundaryClassification& boundary, CustomizeOptions options) {
  return Customizer(g, direction, hierarchy, boundary, options).run(g, hierarchy, boundary);
}

}  // namespace salt
