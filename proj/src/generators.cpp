#include "salt/generators.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "salt/random.hpp"

namespace salt {

GeneratedNetwork grid_graph(std::uint32_t k) {
  std::vector<ArcInput> arcs;
  Coordinates coords(std::size_t{k} * k);
  for (std::uint32_t r = 0; r < k; ++r) {
    for (std::uint32_t c = 0; c < k; ++c) {
      const Vertex v = r * k + c;
      coords[v] = {static_cast<std::int32_t>(c), static_cast<std::int32_t>(r)};
      if (c + 1 < k) {
        arcs.push_back({v, v + 1, 1});
        arcs.push_back({v + 1, v, 1});
      }
      if (r + 1 < k) {
        arcs.push_back({v, v + k, 1});
        arcs.push_back({v + k, v, 1});
      }
    }
  }
  Graph g = Graph::from_arcs(k * k, std::move(arcs));
  return {g, g, std::move(coords)};
}

Graph random_weights(const Graph& g, Weight lo, Weight hi, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Weight> w(g.arc_count());
  for (Weight& x : w) x = lo + static_cast<Weight>(rng.below(std::uint64_t{hi} - lo + 1));
  return g.with_weights(std::move(w));
}

namespace {

struct Street {
  Vertex a;
  Vertex b;
  bool arterial;
};

Vertex find_root(std::vector<Vertex>& parent, Vertex v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

GeneratedNetwork road_network(std::uint32_t width, std::uint32_t height, std::uint64_t seed) {
  Rng rng(seed);
  const std::uint32_t n = width * height;
  constexpr std::int32_t kSpacing = 1000;

  Coordinates lattice(n);
  for (std::uint32_t r = 0; r < height; ++r)
    for (std::uint32_t c = 0; c < width; ++c) {
      const auto jx = static_cast<std::int32_t>(rng.below(601)) - 300;
      const auto jy = static_cast<std::int32_t>(rng.below(601)) - 300;
      lattice[r * width + c] = {static_cast<std::int32_t>(c) * kSpacing + jx,
                                static_cast<std::int32_t>(r) * kSpacing + jy};
    }

  std::vector<Street> streets;
  for (std::uint32_t r = 0; r < height; ++r) {
    for (std::uint32_t c = 0; c < width; ++c) {
      const Vertex v = r * width + c;
      const bool arterial_row = r % 8 == 0;
      const bool arterial_col = c % 8 == 0;
      if (c + 1 < width && (arterial_row || rng.below(100) < 88)) streets.push_back({v, v + 1, arterial_row});
      if (r + 1 < height && (arterial_col || rng.below(100) < 88))
        streets.push_back({v, v + width, arterial_col});
      if (c + 1 < width && r + 1 < height && rng.below(100) < 8)
        streets.push_back({v, v + width + 1, false});
    }
  }

  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const Street& s : streets) parent[find_root(parent, s.a)] = find_root(parent, s.b);
  std::vector<std::uint32_t> size(n, 0);
  for (Vertex v = 0; v < n; ++v) ++size[find_root(parent, v)];
  Vertex best = 0;
  for (Vertex v = 0; v < n; ++v)
    if (size[v] > size[best]) best = v;

  std::vector<Vertex> new_id(n, kNoVertex);
  Coordinates coords;
  for (Vertex v = 0; v < n; ++v)
    if (find_root(parent, v) == best) {
      new_id[v] = static_cast<Vertex>(coords.size());
      coords.push_back(lattice[v]);
    }

  std::vector<ArcInput> time_arcs;
  std::vector<ArcInput> dist_arcs;
  for (const Street& s : streets) {
    if (new_id[s.a] == kNoVertex) continue;
    const Vertex a = new_id[s.a];
    const Vertex b = new_id[s.b];
    const double dx = coords[a].x - coords[b].x;
    const double dy = coords[a].y - coords[b].y;
    const auto length = std::max<Weight>(1, static_cast<Weight>(std::lround(std::hypot(dx, dy))));
    // metres per second scaled: arterials ~25 m/s, local streets 8..14 m/s
    const double speed = s.arterial ? 25.0 : 8.0 + static_cast<double>(rng.below(7));
    for (int dir = 0; dir < 2; ++dir) {
      const double skew = 0.9 + 0.2 * rng.unit();
      const auto t = std::max<Weight>(1, static_cast<Weight>(std::lround(10.0 * length / speed * skew)));
      const Vertex tail = dir == 0 ? a : b;
      const Vertex head = dir == 0 ? b : a;
      time_arcs.push_back({tail, head, t});
      dist_arcs.push_back({tail, head, length});
    }
  }
  const auto m = static_cast<std::uint32_t>(coords.size());
  return {Graph::from_arcs(m, std::move(time_arcs)), Graph::from_arcs(m, std::move(dist_arcs)),
          std::move(coords)};
}

}  // namespace salt
