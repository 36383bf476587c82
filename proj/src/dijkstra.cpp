#include "salt/dijkstra.hpp"

#include <algorithm>

namespace salt {

void Dijkstra::run(std::span<const Vertex> sources, Vertex stop_at) {
  const Graph& g = *graph_;
  labels_.reset(g.vertex_count());
  heap_.clear();
  settled_ = 0;
  for (Vertex s : sources) {
    if (s >= g.vertex_count()) throw RangeError("source vertex out of range");
    labels_.set(s, 0, kNoVertex);
    heap_.push(0, s);
  }
  while (!heap_.empty()) {
    const HeapEntry e = heap_.pop();
    const Vertex u = e.vertex;
    if (labels_.settled(u) || static_cast<Weight>(e.key) != labels_.dist(u)) continue;
    labels_.settle(u);
    ++settled_;
    if (u == stop_at) return;
    const Weight du = labels_.dist(u);
    for (ArcId a = g.first_arc(u); a < g.end_arc(u); ++a) {
      const Vertex w = g.head(a);
      const Weight nd = add_saturated(du, g.weight(a));
      if (nd < labels_.dist(w)) {
        labels_.set(w, nd, u);
        heap_.push(nd, w);
      }
    }
  }
}

PathResult Dijkstra::point_to_point(Vertex s, Vertex t) {
  if (t >= graph_->vertex_count()) throw RangeError("target vertex out of range");
  const Vertex sources[] = {s};
  run(sources, t);
  PathResult r;
  r.settled = settled_;
  r.distance = labels_.dist(t);
  if (r.distance != kInfinity) {
    for (Vertex v = t; v != kNoVertex; v = labels_.parent(v)) r.path.push_back(v);
    std::reverse(r.path.begin(), r.path.end());
  }
  return r;
}

std::vector<Weight> Dijkstra::one_to_all(Vertex s) {
  const Vertex sources[] = {s};
  return multi_source(sources);
}

std::vector<Weight> Dijkstra::multi_source(std::span<const Vertex> sources) {
  run(sources, kNoVertex);
  std::vector<Weight> out(graph_->vertex_count(), kInfinity);
  for (Vertex v : labels_.touched()) out[v] = labels_.dist(v);
  return out;
}

PathResult dijkstra_p2p(const Graph& g, Vertex s, Vertex t) { return Dijkstra(g).point_to_point(s, t); }

std::vector<Weight> dijkstra_one_to_all(const Graph& g, Vertex s) { return Dijkstra(g).one_to_all(s); }

}  // namespace salt
