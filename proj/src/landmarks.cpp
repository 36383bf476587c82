#include "salt/landmarks.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <climits>

#include "salt/dijkstra.hpp"
#include "salt/parallel.hpp"
#include "salt/random.hpp"

namespace salt {

LandmarkTable::LandmarkTable(std::vector<Vertex> landmarks, std::uint32_t vertex_count,
                             std::vector<std::int32_t> records, std::uint64_t graph_fingerprint)
    : landmarks_(std::move(landmarks)),
      vertex_count_(vertex_count),
      records_(std::move(records)),
      fingerprint_(graph_fingerprint) {
  if (records_.size() != 2 * std::size_t{landmark_count()} * vertex_count_)
    throw CountError("landmark record array has the wrong length");
  for (Vertex l : landmarks_)
    if (l >= vertex_count_) throw RangeError("landmark vertex out of range");
}

namespace {

std::vector<Weight> distances_from(const Graph& g, Vertex s) { return dijkstra_one_to_all(g, s); }

// Index of the largest entry not yet chosen; kInfinity counts as largest.
Vertex farthest(std::span<const Weight> dist, const std::vector<bool>& taken) {
  Vertex best = kNoVertex;
  for (Vertex v = 0; v < dist.size(); ++v) {
    if (taken[v]) continue;
    if (best == kNoVertex || dist[v] > dist[best]) best = v;
  }
  return best;
}

}  // namespace

std::vector<Vertex> select_farthest(const Graph& g, std::uint32_t count, std::uint64_t seed,
                                    std::vector<Vertex> chosen) {
  const std::uint32_t n = g.vertex_count();
  count = std::min(count, n);
  std::vector<bool> taken(n, false);
  for (Vertex v : chosen) taken[v] = true;
  if (chosen.size() >= count) return chosen;

  if (chosen.empty()) {
    Rng rng(seed);
    const auto start = static_cast<Vertex>(rng.below(n));
    const auto d = distances_from(g, start);
    const Vertex first = farthest(d, taken);
    chosen.push_back(first);
    taken[first] = true;
  }
  std::vector<Weight> nearest(n, kInfinity);
  for (Vertex l : chosen) {
    const auto d = distances_from(g, l);
    for (Vertex v = 0; v < n; ++v) nearest[v] = std::min(nearest[v], d[v]);
  }
  while (chosen.size() < count) {
    const Vertex next = farthest(nearest, taken);
    chosen.push_back(next);
    taken[next] = true;
    const auto d = distances_from(g, next);
    for (Vertex v = 0; v < n; ++v) nearest[v] = std::min(nearest[v], d[v]);
  }
  return chosen;
}

std::vector<Vertex> select_partition_corners(const Graph& g, const PartitionHierarchy& h,
                                             const Coordinates& coords, std::uint32_t count,
                                             std::uint64_t seed) {
  const std::uint32_t n = g.vertex_count();
  if (count == 0 || n == 0) return {};
  if (coords.size() != n || h.levels() == 0) return select_farthest(g, count, seed);
  count = std::min(count, n);

  // Coarsest level that still offers enough corner candidates.
  std::uint32_t level = 1;
  for (std::uint32_t l = h.levels(); l >= 1; --l)
    if (std::uint64_t{h.cell_count(l)} * 4 >= count) {
      level = l;
      break;
    }

  const std::uint32_t cells = h.cell_count(level);
  constexpr std::array<std::array<int, 2>, 4> kSigns{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  std::vector<std::array<Vertex, 4>> best(cells, {kNoVertex, kNoVertex, kNoVertex, kNoVertex});
  auto score = [&](Vertex v, int k) {
    return kSigns[k][0] * std::int64_t{coords[v].x} + kSigns[k][1] * std::int64_t{coords[v].y};
  };
  const auto cell_of = h.cells_at(level);
  for (Vertex v = 0; v < n; ++v)
    for (int k = 0; k < 4; ++k) {
      Vertex& b = best[cell_of[v]][k];
      if (b == kNoVertex || score(v, k) > score(b, k)) b = v;
    }

  std::vector<Vertex> chosen;
  std::vector<bool> taken(n, false);
  for (int k = 0; k < 4 && chosen.size() < count; ++k)
    for (CellId c = 0; c < cells && chosen.size() < count; ++c) {
      const Vertex v = best[c][k];
      if (v == kNoVertex || taken[v]) continue;
      taken[v] = true;
      chosen.push_back(v);
    }
  return select_farthest(g, count, seed, std::move(chosen));
}

LandmarkTable build_landmark_table(const Graph& g, std::span<const Vertex> landmarks, const OneToAllFn& engine,
                                   unsigned threads) {
  const std::uint32_t n = g.vertex_count();
  const auto S = static_cast<std::uint32_t>(landmarks.size());
  std::vector<std::int32_t> records(2 * std::size_t{S} * n);
  auto clamp = [](Weight d) {
    return d >= static_cast<Weight>(kLandmarkUnreachable) ? kLandmarkUnreachable : static_cast<std::int32_t>(d);
  };
  // Jobs 0..S-1 fill the from-slots, S..2S-1 the to-slots; every job writes
  // disjoint slots.
  parallel_for(2 * std::size_t{S}, threads, [&](unsigned, std::size_t job) {
    const auto j = static_cast<std::uint32_t>(job % S);
    const bool from = job < S;
    const auto dist = engine(landmarks[j], from ? Direction::forward : Direction::reverse);
    for (Vertex v = 0; v < n; ++v) {
      const std::size_t base = 2 * std::size_t{S} * v;
      if (from)
        records[base + j] = -clamp(dist[v]);
      else
        records[base + S + j] = clamp(dist[v]);
    }
  });
  return LandmarkTable({landmarks.begin(), landmarks.end()}, n, std::move(records), g.fingerprint());
}

LandmarkTable build_landmark_table(const Graph& g, std::span<const Vertex> landmarks, unsigned threads) {
  const Graph reverse = build_reverse(g);
  return build_landmark_table(
      g, landmarks,
      [&](Vertex s, Direction d) { return dijkstra_one_to_all(d == Direction::forward ? g : reverse, s); },
      threads);
}

Weight lower_bound(const LandmarkTable& t, Vertex u, Vertex v) {
  const Eigen::Index size = 2 * Eigen::Index{t.landmark_count()};
  if (size == 0) return 0;
  const auto ru = t.record(u), rv = t.record(v);
  const Eigen::Map<const Eigen::ArrayXi> a(ru.data(), size), b(rv.data(), size);
  const auto finite = (a.abs() < kLandmarkUnreachable) && (b.abs() < kLandmarkUnreachable);
  const int best = finite.select(a - b, 0).maxCoeff();
  return best > 0 ? static_cast<Weight>(best) : 0;
}

Weight upper_bound(const LandmarkTable& t, Vertex u, Vertex v) {
  const Eigen::Index size = t.landmark_count();
  if (size == 0) return kInfinity;
  const auto to = t.to_slots(u), from = t.from_slots(v);
  const Eigen::Map<const Eigen::ArrayXi> a(to.data(), size), b(from.data(), size);
  const auto finite = (a < kLandmarkUnreachable) && (b > -kLandmarkUnreachable);
  const int best = finite.select(a - b, INT_MAX).minCoeff();
  return best == INT_MAX ? kInfinity : static_cast<Weight>(best);
}

void BoundedMaxHeap::push(Weight value) {
  if (capacity_ == 0) return;
  if (items_.size() < capacity_) {
    items_.push_back(value);
    std::push_heap(items_.begin(), items_.end());
  } else if (value < items_.front()) {
    std::pop_heap(items_.begin(), items_.end());
    items_.back() = value;
    std::push_heap(items_.begin(), items_.end());
  }
}

}  // namespace salt
