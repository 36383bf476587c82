#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "salt/knn.hpp"
#include "salt/random.hpp"

using namespace salt;

namespace {

std::vector<Vertex> draw(Rng& rng, std::uint32_t n, std::uint32_t count) {
  std::vector<Vertex> out;
  for (std::uint32_t i = 0; i < count; ++i) out.push_back(static_cast<Vertex>(rng.below(n)));
  return out;
}

void check_trials(const SaltIndex& index, int trials, std::uint64_t seed) {
  KnnEngine e(index);
  const Graph& g = index.graph();
  const auto arcs = oracle::arcs_of(g);
  Rng rng(seed);
  const std::uint32_t ks[] = {1, 2, 4, 8, 16};
  for (int i = 0; i < trials; ++i) {
    const auto s = static_cast<Vertex>(rng.below(g.vertex_count()));
    const auto size = static_cast<std::uint32_t>(1 + rng.below(40));
    const auto objects = draw(rng, g.vertex_count(), size);
    const std::uint32_t k = ks[rng.below(5)];
    const auto from_s = oracle::distances(g.vertex_count(), arcs, {s});
    const auto want = oracle::knn(from_s, objects, k);
    CAPTURE(s);
    CAPTURE(k);
    const KnnResult with = e.query(s, objects, k, {true});
    const KnnResult without = e.query(s, objects, k, {false});
    CHECK(with.neighbors == want);
    CHECK(without.neighbors == want);
  }
}

}  // namespace

TEST_CASE("kth_lowest_upper_bound and pruning_phase") {
  const auto in = fixtures::grid(6, {4, 2});
  const SaltIndex index = fixtures::index_for(in, random_weights(in.net.travel_time, 1, 20, 1));
  const LandmarkTable& t = index.landmarks();
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto s = static_cast<Vertex>(rng.below(36));
    ObjectSet objects(draw(rng, 36, 64), index.hierarchy());
    std::vector<Weight> ubs;
    for (Vertex o : objects.vertices()) ubs.push_back(upper_bound(t, s, o));
    std::sort(ubs.begin(), ubs.end());
    CHECK(kth_lowest_upper_bound(t, s, objects, 4) == ubs[3]);
    CHECK(kth_lowest_upper_bound(t, s, objects, objects.size()) == ubs.back());
    const PruningStats all = pruning_phase(t, s, objects, objects.size());
    CHECK(all.alive == objects.size());
    CHECK(all.pruned_fraction == 0.0);
    const PruningStats some = pruning_phase(t, s, objects, 2);
    for (std::uint32_t j = 0; j < objects.size(); ++j)
      CHECK(objects.alive(j) == (lower_bound(t, s, objects.vertex(j)) <= some.kth_upper_bound));
    CHECK(some.alive == objects.alive_count());
  }
  ObjectSet two(std::vector<Vertex>{1, 2}, index.hierarchy());
  CHECK_THROWS_AS(kth_lowest_upper_bound(t, 0, two, 3), InsufficientObjectsError);
  CHECK_THROWS_AS(kth_lowest_upper_bound(t, 0, two, 0), InsufficientObjectsError);

  ObjectSet at_s(std::vector<Vertex>{7, 7, 7}, index.hierarchy());
  CHECK(at_s.size() == 1);
  CHECK(pruning_phase(t, 7, at_s, 1).alive == 1);
}

TEST_CASE("pruning keeps the true nearest neighbor on GRID-8") {
  const auto in = fixtures::grid(8, {16, 4});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  const auto arcs = oracle::arcs_of(index.graph());
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const auto s = static_cast<Vertex>(rng.below(64));
    ObjectSet objects(draw(rng, 64, 256), index.hierarchy());
    pruning_phase(index.landmarks(), s, objects, 1);
    // grid distances are Manhattan distances
    Vertex best = kNoVertex;
    std::uint32_t best_d = UINT32_MAX;
    for (Vertex o : objects.vertices()) {
      const std::uint32_t d = static_cast<std::uint32_t>(std::abs(int(o % 8) - int(s % 8)) + std::abs(int(o / 8) - int(s / 8)));
      if (d < best_d) best_d = d, best = o;
    }
    const auto it = std::lower_bound(objects.vertices().begin(), objects.vertices().end(), best);
    CHECK(objects.alive(static_cast<std::uint32_t>(it - objects.vertices().begin())));
  }
}

TEST_CASE("knn examples") {
  const auto in = fixtures::grid(4, {4, 2});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  KnnEngine e(index);
  const Vertex self[] = {5};
  CHECK(e.query(5, self, 1).neighbors == std::vector<std::pair<Vertex, Weight>>{{5, 0}});
  const Vertex two[] = {1, 15};
  CHECK(e.query(0, two, 1).neighbors == std::vector<std::pair<Vertex, Weight>>{{1, 1}});
  // k beyond |O| ranks everything; ties go to the smaller id
  const Vertex tie[] = {4, 1, 15};
  CHECK(e.query(0, tie, 9).neighbors == std::vector<std::pair<Vertex, Weight>>{{1, 1}, {4, 1}, {15, 6}});
  const Vertex dup[] = {3, 3, 3};
  CHECK(e.query(0, dup, 2).neighbors == std::vector<std::pair<Vertex, Weight>>{{3, 3}});
  CHECK_THROWS_AS(e.query(16, two, 1), RangeError);
}

TEST_CASE("knn equals the brute-force oracle on GRID-8") {
  const auto in = fixtures::grid(8, {16, 4});
  check_trials(fixtures::index_for(in, in.net.travel_time), 1000, 5);
  check_trials(fixtures::index_for(in, random_weights(in.net.travel_time, 1, 20, 6)), 1000, 6);
}

TEST_CASE("knn on road networks, both metrics, arc reduction on and off") {
  const auto in = fixtures::road(20, 20, 5, {32, 8, 2});
  check_trials(fixtures::index_for(in, in.net.travel_time), 300, 7);
  check_trials(fixtures::index_for(in, in.net.travel_distance), 300, 8);
  IndexOptions off;
  off.arc_reduction = false;
  check_trials(fixtures::index_for(in, in.net.travel_time, off), 200, 9);
}

TEST_CASE("knn with unreachable objects returns fewer results") {
  std::vector<ArcInput> arcs;
  const auto grid = grid_graph(6);
  for (const auto& a : grid.travel_time.arcs())
    if (grid.coordinates[a.tail].x <= grid.coordinates[a.head].x) arcs.push_back(a);
  fixtures::Instance in{{Graph::from_arcs(36, arcs), {}, grid.coordinates}, {}};
  in.hierarchy = bisect_partition(in.net.travel_time, in.net.coordinates, {8, 2});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  KnnEngine e(index);
  // from x = 3 nothing with x < 3 is reachable
  const Vertex objects[] = {0, 1, 6, 5};
  CHECK(e.query(3, objects, 4).neighbors == std::vector<std::pair<Vertex, Weight>>{{5, 2}});
  check_trials(index, 300, 10);
}

TEST_CASE("reload_queue leaves labels that are upper bounds of surviving sources") {
  const auto in = fixtures::grid(4, {4, 2});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  const auto arcs = oracle::arcs_of(index.graph());
  const Graph rev = build_reverse(index.graph());
  const auto rarcs = oracle::arcs_of(rev);
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    KnnEngine e(index);
    const auto s = static_cast<Vertex>(rng.below(16));
    auto objects = draw(rng, 16, 5);
    ObjectSet set(objects, index.hierarchy());
    const KnnResult r = e.query(s, set, 1);
    REQUIRE(r.neighbors.size() == 1);
    const Vertex removed = r.neighbors[0].first;
    e.reload_queue(removed, s);
    std::vector<Vertex> survivors;
    for (Vertex o : set.vertices())
      if (o != removed) survivors.push_back(o);
    const auto truth = oracle::distances(16, rarcs, survivors);
    for (Vertex v : e.labels().touched()) {
      if (!e.labels().labeled(v)) continue;
      CHECK(e.labels().origin(v) != removed);
      CHECK(e.labels().dist(v) >= truth[v]);
      CHECK_FALSE(e.labels().settled(v));
    }
  }
}

TEST_CASE("monotone output and stable pruning report") {
  const auto in = fixtures::road(20, 20, 12, {32, 8, 2});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  KnnEngine e(index);
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const auto s = static_cast<Vertex>(rng.below(index.vertex_count()));
    const auto objects = draw(rng, index.vertex_count(), 100);
    const KnnResult r = e.query(s, objects, 16);
    CHECK(r.neighbors.size() == 16);
    for (std::size_t j = 1; j < r.neighbors.size(); ++j) CHECK(r.neighbors[j - 1].second <= r.neighbors[j].second);
    CHECK(r.pruning.pruned_fraction >= 0.0);
    CHECK(r.pruning.pruned_fraction <= 1.0);
  }
}
