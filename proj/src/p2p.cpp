#include "salt/p2p.hpp"

#include <algorithm>

namespace salt {

P2PEngine::P2PEngine(const SaltIndex& index) : index_(&index), dijkstra_(index.graph()) {}

void P2PEngine::check(Vertex s, Vertex t) const {
  const std::uint32_t n = index_->vertex_count();
  if (s >= n || t >= n) throw RangeError("query vertex out of range");
}

// Equal keys pop the entry with the smaller potential first, i.e. the one
// deeper into the search (the usual A* tie rule; fewer ties get settled).
namespace {
std::uint32_t tie_of(std::int64_t potential) { return static_cast<std::uint32_t>(potential + (std::int64_t{1} << 31)); }
}  // namespace

// A* from s until t is settled; pot(v) is a consistent lower bound on d(v, t).
template <typename Arcs, typename Pot>
QueryResult P2PEngine::unidirectional(Vertex s, Vertex t, Arcs&& arcs, Pot&& pot) {
  Side& f = sides_[0];
  const std::uint32_t n = index_->vertex_count();
  f.labels.reset(n);
  f.potential.resize(n);
  f.heap.clear();
  QueryResult r;
  f.labels.set(s, 0, kNoVertex);
  f.potential[s] = pot(s);
  f.heap.push(f.potential[s], s, tie_of(f.potential[s]));
  while (!f.heap.empty()) {
    const HeapEntry e = f.heap.pop();
    const Vertex u = e.vertex;
    if (f.labels.settled(u)) continue;
    const Weight du = f.labels.dist(u);
    if (e.key != std::int64_t{du} + f.potential[u]) continue;
    f.labels.settle(u);
    ++r.settled;
    if (u == t) {
      r.distance = du;
      break;
    }
    arcs(u, [&](Vertex w, Weight wt) {
      const Weight nd = add_saturated(du, wt);
      if (nd == kInfinity) return;
      if (!f.labels.labeled(w)) {
        f.potential[w] = pot(w);
      } else if (nd >= f.labels.dist(w)) {
        return;
      }
      f.labels.set(w, nd, u);
      f.heap.push(std::int64_t{nd} + f.potential[w], w, tie_of(f.potential[w]));
    });
  }
  return r;
}

// Keys are doubled so that the average potential stays integral: the forward
// side uses 2d + pot_x2(v), the backward side 2d - pot_x2(v). The search stops
// once top_f + top_b >= 2 * best meeting distance.
template <typename ArcsF, typename ArcsB, typename Pot>
QueryResult P2PEngine::bidirectional(Vertex s, Vertex t, ArcsF&& forward, ArcsB&& backward, Pot&& pot_x2) {
  const std::uint32_t n = index_->vertex_count();
  for (Side& side : sides_) {
    side.labels.reset(n);
    side.potential.resize(n);
    side.heap.clear();
  }
  QueryResult r;
  std::uint64_t mu = kInfinity;
  const Vertex roots[2] = {s, t};
  for (int i = 0; i < 2; ++i) {
    Side& side = sides_[i];
    const std::int64_t p = i == 0 ? pot_x2(roots[i]) : -pot_x2(roots[i]);
    side.labels.set(roots[i], 0, kNoVertex);
    side.potential[roots[i]] = p;
    side.heap.push(p, roots[i], tie_of(p));
  }
  if (s == t) {
    mu = 0;
    r.meeting = s;
  }

  auto step = [&](int i, auto&& arcs) {
    Side& me = sides_[i];
    Side& other = sides_[1 - i];
    const HeapEntry e = me.heap.pop();
    const Vertex u = e.vertex;
    if (me.labels.settled(u)) return;
    const Weight du = me.labels.dist(u);
    if (e.key != 2 * std::int64_t{du} + me.potential[u]) return;
    me.labels.settle(u);
    ++r.settled;
    arcs(u, [&](Vertex w, Weight wt) {
      const Weight nd = add_saturated(du, wt);
      if (nd == kInfinity) return;
      if (!me.labels.labeled(w)) {
        me.potential[w] = i == 0 ? pot_x2(w) : -pot_x2(w);
      } else if (nd >= me.labels.dist(w)) {
        return;
      }
      me.labels.set(w, nd, u);
      me.heap.push(2 * std::int64_t{nd} + me.potential[w], w, tie_of(me.potential[w]));
      const Weight back = other.labels.dist(w);
      if (back != kInfinity && std::uint64_t{nd} + back < mu) {
        mu = std::uint64_t{nd} + back;
        r.meeting = w;
      }
    });
  };

  while (!sides_[0].heap.empty() && !sides_[1].heap.empty()) {
    const std::int64_t top_f = sides_[0].heap.top().key;
    const std::int64_t top_b = sides_[1].heap.top().key;
    if (mu != kInfinity && top_f + top_b >= 2 * static_cast<std::int64_t>(mu)) break;
    if (top_f <= top_b)
      step(0, forward);
    else
      step(1, backward);
  }
  r.distance = mu >= kInfinity ? kInfinity : static_cast<Weight>(mu);
  return r;
}

QueryResult P2PEngine::dijkstra(Vertex s, Vertex t) {
  check(s, t);
  const PathResult p = dijkstra_.point_to_point(s, t);
  return {p.distance, p.settled, kNoVertex};
}

namespace {

auto graph_arcs(const Graph& g) {
  return [&g](Vertex u, auto&& fn) {
    for (ArcId a = g.first_arc(u); a < g.end_arc(u); ++a) fn(g.head(a), g.weight(a));
  };
}

}  // namespace

QueryResult P2PEngine::bi_alt(Vertex s, Vertex t) {
  check(s, t);
  index_->check_landmarks();
  const AveragePotential pot{&index_->landmarks(), s, t};
  return bidirectional(s, t, graph_arcs(index_->graph(Direction::forward)),
                       graph_arcs(index_->graph(Direction::reverse)), [&](Vertex v) { return pot.forward_x2(v); });
}

QueryResult P2PEngine::crp(Vertex s, Vertex t, bool bidirectional_search) {
  check(s, t);
  const SaltIndex& x = *index_;
  x.check_overlay(Direction::forward);
  scope_.reset(x.hierarchy());
  scope_.add_anchor(s);
  scope_.add_anchor(t);
  const UnionGraph fw{&x.graph(Direction::forward), &x.hierarchy(), &x.boundary(),
                      &x.customization(Direction::forward).overlay, false};
  auto fw_arcs = [&](Vertex u, auto&& fn) { fw.for_each_arc(u, scope_.level_of(u), scope_, fn); };
  if (!bidirectional_search) return unidirectional(s, t, fw_arcs, [](Vertex) { return std::int64_t{0}; });
  const UnionGraph bw{&x.graph(Direction::reverse), &x.hierarchy(), &x.boundary(),
                      &x.customization(Direction::forward).overlay, true};
  auto bw_arcs = [&](Vertex u, auto&& fn) { bw.for_each_arc(u, scope_.level_of(u), scope_, fn); };
  return bidirectional(s, t, fw_arcs, bw_arcs, [](Vertex) { return std::int64_t{0}; });
}

QueryResult P2PEngine::salt(Vertex s, Vertex t, SaltMode mode) {
  check(s, t);
  const SaltIndex& x = *index_;
  x.check_overlay(Direction::forward);
  x.check_landmarks();
  const LandmarkTable& table = x.landmarks();
  scope_.reset(x.hierarchy());
  scope_.add_anchor(s);
  scope_.add_anchor(t);
  const UnionGraph fw{&x.graph(Direction::forward), &x.hierarchy(), &x.boundary(),
                      &x.customization(Direction::forward).overlay, false};
  auto fw_arcs = [&](Vertex u, auto&& fn) { fw.for_each_arc(u, scope_.level_of(u), scope_, fn); };
  if (mode == SaltMode::uni)
    return unidirectional(s, t, fw_arcs, [&](Vertex v) { return std::int64_t{lower_bound(table, v, t)}; });
  const UnionGraph bw{&x.graph(Direction::reverse), &x.hierarchy(), &x.boundary(),
                      &x.customization(Direction::forward).overlay, true};
  auto bw_arcs = [&](Vertex u, auto&& fn) { bw.for_each_arc(u, scope_.level_of(u), scope_, fn); };
  const AveragePotential pot{&table, s, t};
  return bidirectional(s, t, fw_arcs, bw_arcs, [&](Vertex v) { return pot.forward_x2(v); });
}

}  // namespace salt
