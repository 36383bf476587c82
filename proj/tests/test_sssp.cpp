#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "salt/random.hpp"
#include "salt/sssp.hpp"

using namespace salt;

namespace {

std::vector<Weight> expected(const Graph& g, Vertex s) {
  std::vector<Weight> out;
  for (auto d : oracle::distances(g, s)) out.push_back(oracle::as_weight(d));
  return out;
}

void check_one_to_all(const fixtures::Instance& in, const Graph& g, int sources, std::uint64_t seed) {
  IndexOptions opts;
  opts.landmark_count = 4;
  const SaltIndex index = fixtures::index_for(in, g, opts);
  SsspEngine e(index);
  const Graph rev = build_reverse(g);
  Rng rng(seed);
  for (int i = 0; i < sources; ++i) {
    const auto s = static_cast<Vertex>(rng.below(g.vertex_count()));
    CAPTURE(s);
    CHECK(e.one_to_all(s, Direction::forward) == expected(g, s));
    CHECK(e.one_to_all(s, Direction::reverse) == expected(rev, s));
  }
}

}  // namespace

TEST_CASE("one_to_all equals Dijkstra on GRID-6") {
  const auto in = fixtures::grid(6, {4, 2});
  check_one_to_all(in, in.net.travel_time, 20, 1);
  check_one_to_all(in, random_weights(in.net.travel_time, 1, 25, 2), 20, 2);
}

TEST_CASE("one_to_all on road networks, several level profiles") {
  const auto a = fixtures::road(20, 20, 1, {32, 8, 2});
  check_one_to_all(a, a.net.travel_time, 15, 3);
  check_one_to_all(a, a.net.travel_distance, 15, 4);
  const auto b = fixtures::road(16, 16, 2, {4});
  check_one_to_all(b, b.net.travel_time, 10, 5);
}

TEST_CASE("one_to_all from a vertex without out-arcs") {
  // directed star into vertex 0
  std::vector<ArcInput> arcs;
  for (Vertex v = 1; v < 9; ++v) arcs.push_back({v, 0, v});
  fixtures::Instance in{{Graph::from_arcs(9, arcs), {}, {}}, {}};
  for (Vertex v = 0; v < 9; ++v) in.net.coordinates.push_back({static_cast<int>(v % 3), static_cast<int>(v / 3)});
  in.hierarchy = bisect_partition(in.net.travel_time, in.net.coordinates, {4, 2});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  SsspEngine e(index);
  const auto d = e.one_to_all(0);
  CHECK(d[0] == 0);
  for (Vertex v = 1; v < 9; ++v) CHECK(d[v] == kInfinity);
  const auto r = e.one_to_all(0, Direction::reverse);
  for (Vertex v = 1; v < 9; ++v) CHECK(r[v] == v);
}

TEST_CASE("reverse one_to_all equals forward one_to_all on the reverse graph") {
  const auto in = fixtures::road(14, 14, 9, {16, 4});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  const Graph rev = build_reverse(in.net.travel_time);
  const SaltIndex rindex = fixtures::index_for(in, rev);
  SsspEngine a(index), b(rindex);
  for (Vertex s : {0u, 17u, 101u}) CHECK(a.one_to_all(s, Direction::reverse) == b.one_to_all(s, Direction::forward));
}

TEST_CASE("range queries") {
  const auto in = fixtures::grid(6, {4, 2});
  const Graph g = random_weights(in.net.travel_time, 1, 5, 3);
  const SaltIndex index = fixtures::index_for(in, g);
  SsspEngine e(index);
  CHECK(e.range(7, 0) == std::vector<std::pair<Vertex, Weight>>{{7, 0}});
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto s = static_cast<Vertex>(rng.below(36));
    const auto all = expected(g, s);
    for (Weight theta : {0u, 3u, 7u, 12u, kInfinity - 1}) {
      std::vector<std::pair<Vertex, Weight>> want;
      for (Vertex v = 0; v < 36; ++v)
        if (all[v] <= theta) want.emplace_back(v, all[v]);
      std::sort(want.begin(), want.end(), [](auto a, auto b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
      CAPTURE(s);
      CAPTURE(theta);
      CHECK(e.range(s, theta) == want);
    }
    CHECK(e.range(s, kInfinity - 1).size() == 36);
  }
}

TEST_CASE("range on a road network, reverse direction") {
  const auto in = fixtures::road(18, 18, 6, {16, 4, 2});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  const Graph rev = build_reverse(in.net.travel_time);
  SsspEngine e(index);
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const auto s = static_cast<Vertex>(rng.below(index.vertex_count()));
    const auto all = expected(rev, s);
    auto sorted = all;
    std::sort(sorted.begin(), sorted.end());
    const Weight theta = sorted[sorted.size() / 3];
    std::size_t within = 0;
    for (Weight d : all) within += d <= theta;
    const auto got = e.range(s, theta, Direction::reverse);
    CHECK(got.size() == within);
    for (auto [v, d] : got) CHECK(all[v] == d);
  }
}

TEST_CASE("one_to_many") {
  const auto in = fixtures::grid(6, {4, 2});
  const Graph g = random_weights(in.net.travel_time, 1, 25, 7);
  const SaltIndex index = fixtures::index_for(in, g);
  SsspEngine e(index);
  const Vertex self[] = {9};
  CHECK(e.one_to_many(9, TargetSet(self, index.hierarchy())) == std::vector<std::pair<Vertex, Weight>>{{9, 0}});
  CHECK_THROWS_AS(TargetSet({}, index.hierarchy()), EmptyTargetsError);

  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto s = static_cast<Vertex>(rng.below(36));
    std::vector<Vertex> targets;
    for (int k = 0; k < 50; ++k) targets.push_back(static_cast<Vertex>(rng.below(36)));
    const auto all = expected(g, s);
    const auto got = e.one_to_many(s, TargetSet(targets, index.hierarchy()));
    REQUIRE(got.size() == targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) {
      CHECK(got[k].first == targets[k]);
      CHECK(got[k].second == all[targets[k]]);
    }
  }
  std::vector<Vertex> every(36);
  std::iota(every.begin(), every.end(), 0);
  const auto full = e.one_to_many(3, TargetSet(every, index.hierarchy()));
  const auto arr = e.one_to_all(3);
  for (Vertex v = 0; v < 36; ++v) CHECK(full[v].second == arr[v]);
}

TEST_CASE("sweep is deterministic and thread count does not matter") {
  const auto in = fixtures::road(20, 20, 3, {32, 8, 2});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  SsspEngine e(index);
  const auto once = e.one_to_all(5);
  CHECK(e.one_to_all(5) == once);
  CHECK(e.one_to_all(5, Direction::forward, 4) == once);
}

TEST_CASE("stale overlay is rejected") {
  const auto in = fixtures::grid(4, {4});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  auto fwd = index.customization(Direction::forward);
  const Graph other = random_weights(index.graph(), 1, 9, 1);
  CHECK_THROWS_AS(SaltIndex::assemble(other, index.hierarchy(), fwd, index.customization(Direction::reverse),
                                      index.landmarks(), index.permutation()),
                  StaleIndexError);
}
