#pragma once

// Brute-force reference computations for the test suites. Deliberately
// independent of the library's search code: no heaps, no label stores,
// plain arrays over an explicit arc list.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <tuple>
#include <utility>
#include <vector>

#include "salt/graph.hpp"

namespace oracle {

using salt::Vertex;
using salt::Weight;
inline constexpr std::uint64_t kUnreached = UINT64_MAX;

struct Arc {
  Vertex tail, head;
  Weight weight;
};

inline std::vector<Arc> arcs_of(const salt::Graph& g) {
  std::vector<Arc> out;
  for (const auto& a : g.arcs()) out.push_back({a.tail, a.head, a.weight});
  return out;
}

// O(n^2) array Dijkstra over an adjacency built from the arc list; `allowed`
// restricts the vertices the search may enter.
inline std::vector<std::uint64_t> distances(std::uint32_t n, const std::vector<Arc>& arcs,
                                            const std::vector<Vertex>& sources,
                                            const std::function<bool(Vertex)>& allowed = {}) {
  std::vector<std::vector<std::pair<Vertex, Weight>>> adj(n);
  for (const Arc& a : arcs) adj[a.tail].emplace_back(a.head, a.weight);
  std::vector<std::uint64_t> d(n, kUnreached);
  std::vector<char> done(n, 0);
  for (Vertex s : sources) d[s] = 0;
  for (;;) {
    Vertex u = n;
    for (Vertex v = 0; v < n; ++v)
      if (!done[v] && d[v] != kUnreached && (u == n || d[v] < d[u])) u = v;
    if (u == n) break;
    done[u] = 1;
    for (auto [w, wt] : adj[u]) {
      if (allowed && !allowed(w)) continue;
      d[w] = std::min(d[w], d[u] + wt);
    }
  }
  return d;
}

inline std::vector<std::uint64_t> distances(const salt::Graph& g, Vertex s) {
  return distances(g.vertex_count(), arcs_of(g), {s});
}

// Engine-convention view of an oracle distance.
inline Weight as_weight(std::uint64_t d) { return d == kUnreached ? salt::kInfinity : static_cast<Weight>(d); }

// All-pairs by repeated array Dijkstra; rows are sources.
inline std::vector<std::vector<std::uint64_t>> all_pairs(const salt::Graph& g) {
  const auto arcs = arcs_of(g);
  std::vector<std::vector<std::uint64_t>> out;
  for (Vertex s = 0; s < g.vertex_count(); ++s) out.push_back(distances(g.vertex_count(), arcs, {s}));
  return out;
}

// k nearest objects from s by forward distance, ties by vertex id,
// unreachable objects excluded, duplicates collapsed.
inline std::vector<std::pair<Vertex, Weight>> knn(const std::vector<std::uint64_t>& from_s,
                                                  std::vector<Vertex> objects, std::uint32_t k) {
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  std::vector<std::pair<std::uint64_t, Vertex>> ranked;
  for (Vertex o : objects)
    if (from_s[o] != kUnreached) ranked.emplace_back(from_s[o], o);
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::pair<Vertex, Weight>> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i)
    out.emplace_back(ranked[i].second, static_cast<Weight>(ranked[i].first));
  return out;
}

}  // namespace oracle
