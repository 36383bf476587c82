#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "salt/p2p.hpp"
#include "salt/random.hpp"

using namespace salt;

namespace {

void check_all_engines(const fixtures::Instance& in, const Graph& g, std::uint32_t pairs, std::uint64_t seed,
                       bool arc_reduction = true) {
  IndexOptions opts;
  opts.arc_reduction = arc_reduction;
  opts.landmark_count = 8;
  const SaltIndex index = fixtures::index_for(in, g, opts);
  P2PEngine engine(index);
  const auto arcs = oracle::arcs_of(g);
  Rng rng(seed);
  for (std::uint32_t i = 0; i < pairs; ++i) {
    const auto s = static_cast<Vertex>(rng.below(g.vertex_count()));
    const auto t = static_cast<Vertex>(rng.below(g.vertex_count()));
    const Weight want = oracle::as_weight(oracle::distances(g.vertex_count(), arcs, {s})[t]);
    CAPTURE(s);
    CAPTURE(t);
    CHECK(engine.dijkstra(s, t).distance == want);
    CHECK(engine.bi_alt(s, t).distance == want);
    CHECK(engine.crp(s, t).distance == want);
    CHECK(engine.crp(s, t, true).distance == want);
    CHECK(engine.salt(s, t, SaltMode::uni).distance == want);
    CHECK(engine.salt(s, t, SaltMode::bi).distance == want);
  }
}

}  // namespace

TEST_CASE("dijkstra_p2p on the grid") {
  const auto grid = grid_graph(4);
  CHECK(dijkstra_p2p(grid.travel_time, 5, 5).distance == 0);
  const PathResult r = dijkstra_p2p(grid.travel_time, 0, 15);
  CHECK(r.distance == 6);
  CHECK(r.path.front() == 0);
  CHECK(r.path.back() == 15);
  CHECK(r.path.size() == 7);
  CHECK(r.settled >= 7);

  const Graph split = Graph::from_arcs(3, {{0, 1, 4}});
  CHECK(dijkstra_p2p(split, 0, 2).distance == kInfinity);
  CHECK(dijkstra_p2p(split, 0, 2).path.empty());
}

TEST_CASE("every engine answers s = t with 0") {
  const auto in = fixtures::grid(8, {16, 4});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  P2PEngine e(index);
  for (Vertex v : {0u, 9u, 63u}) {
    CHECK(e.dijkstra(v, v).distance == 0);
    CHECK(e.bi_alt(v, v).distance == 0);
    CHECK(e.crp(v, v).distance == 0);
    CHECK(e.crp(v, v, true).distance == 0);
    CHECK(e.salt(v, v, SaltMode::uni).distance == 0);
    CHECK(e.salt(v, v, SaltMode::bi).distance == 0);
  }
}

TEST_CASE("engines agree with the oracle on GRID-8, both metrics") {
  const auto in = fixtures::grid(8, {16, 4});
  check_all_engines(in, in.net.travel_time, 300, 11);
  check_all_engines(in, random_weights(in.net.travel_time, 1, 20, 5), 300, 12);
}

TEST_CASE("engines agree with the oracle on a road network") {
  const auto in = fixtures::road(24, 24, 3, {64, 16, 4});
  check_all_engines(in, in.net.travel_time, 150, 21);
  check_all_engines(in, in.net.travel_distance, 150, 22);
}

TEST_CASE("arc reduction off gives the same answers") {
  const auto in = fixtures::road(20, 20, 4, {32, 8});
  check_all_engines(in, in.net.travel_time, 100, 31, false);
}

TEST_CASE("one level and a single cell still work") {
  const auto a = fixtures::grid(8, {4});
  check_all_engines(a, a.net.travel_time, 100, 41);
  const auto b = fixtures::grid(6, {1});
  check_all_engines(b, b.net.travel_time, 50, 42);
}

TEST_CASE("directed graph with unreachable pairs") {
  // Two one-way chains joined only from left to right.
  std::vector<ArcInput> arcs;
  auto grid = grid_graph(6);
  for (const auto& a : grid.travel_time.arcs())
    if (grid.coordinates[a.tail].x <= grid.coordinates[a.head].x) arcs.push_back({a.tail, a.head, a.weight + a.tail % 3});
  fixtures::Instance in{{Graph::from_arcs(36, arcs), {}, grid.coordinates}, {}};
  in.hierarchy = bisect_partition(in.net.travel_time, in.net.coordinates, {8, 2});
  check_all_engines(in, in.net.travel_time, 300, 51);
}

TEST_CASE("stale landmark table and out-of-range ids are rejected") {
  const auto in = fixtures::grid(4, {4});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  P2PEngine e(index);
  CHECK_THROWS_AS(e.salt(0, 16), RangeError);

  LandmarkTable stale = index.landmarks();
  stale.set_graph_fingerprint(stale.graph_fingerprint() + 1);
  CHECK_THROWS_AS(SaltIndex::assemble(index.graph(), index.hierarchy(), index.customization(Direction::forward),
                                      index.customization(Direction::reverse), stale, index.permutation()),
                  StaleIndexError);
}
