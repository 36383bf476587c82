#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "salt/bench.hpp"
#include "salt/knn.hpp"

using namespace salt;

TEST_CASE("summarize gives mean and median") {
  const Summary odd = summarize({5, 1, 3});
  CHECK(odd.mean == doctest::Approx(3.0));
  CHECK(odd.median == doctest::Approx(3.0));
  const Summary even = summarize({4, 1, 2, 10});
  CHECK(even.mean == doctest::Approx(4.25));
  CHECK(even.median == doctest::Approx(3.0));
}

TEST_CASE("p2p bench on GRID-8: every engine agrees") {
  const auto in = fixtures::grid(8, {16, 4});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time, {.landmark_count = 8});
  const P2PReport r = bench_p2p(index, 100, 7);
  CHECK(r.pairs == 100);
  CHECK(r.engines.size() == 5);
  CHECK_NOTHROW(r.engine("uni-salt"));
  std::ostringstream out;
  print(out, r);
  CHECK(out.str().find("bi-salt\t100\t") != std::string::npos);
}

TEST_CASE("p2p bench settled medians: uniSALT below CRP below Dijkstra") {
  const auto in = fixtures::road(48, 48, 2, {64, 16, 4});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time);
  const P2PReport r = bench_p2p(index, 200, 11);
  CHECK(r.engine("uni-salt").settled.median < r.engine("crp").settled.median);
  CHECK(r.engine("crp").settled.median < r.engine("dijkstra").settled.median);
}

TEST_CASE("k-NN bench on GRID-10 agrees with the baseline") {
  const auto in = fixtures::grid(10, {16, 4});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time, {.landmark_count = 8});
  KnnConfig c;
  c.object_sizes = {16, 32, 64};
  c.k_values = {1, 4};
  c.object_sets = 3;
  c.locations = 4;
  c.ball_sizes = {50, 100};  // |B| = |O| = 50 is the fully clustered case
  c.ball_sets = 2;
  const KnnReport r = bench_knn(index, c);
  CHECK(r.trials == 3 * 3 * 4 * 2 + 2 * 2 * 4 * 2);
  REQUIRE(r.rows.size() == 3 * 2 + 2 * 2);
  for (const auto& row : r.rows) CHECK(row.pruning_violations == 0);
  CHECK(r.rows.back().distribution == "ball");
  CHECK(r.rows.back().objects == 50);
}

TEST_CASE("ball objects are a subset of the Dijkstra ball") {
  const auto in = fixtures::grid(10, {16, 4});
  const Graph& g = in.net.travel_time;
  const auto d = oracle::distances(g, 44);
  auto sorted = d;
  std::sort(sorted.begin(), sorted.end());
  const auto objects = ball_objects(g, 44, 20, 7, 3);
  CHECK(objects.size() == 7);
  CHECK(std::set<Vertex>(objects.begin(), objects.end()).size() == 7);
  for (Vertex o : objects) CHECK(d[o] <= sorted[19]);
  CHECK(ball_objects(g, 44, 20, 7, 3) == objects);
  auto all = ball_objects(g, 44, 20, 20, 1);
  std::sort(all.begin(), all.end());
  CHECK(all.size() == 20);
}

TEST_CASE("perturbation is seeded, bounded and positive") {
  const auto in = fixtures::road(16, 16, 1, {4, 2});
  const Graph& g = in.net.travel_time;
  const auto a = perturb_weights(g, 0.5, 20, 9);
  CHECK(a == perturb_weights(g, 0.5, 20, 9));
  std::size_t changed = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double w = g.weights()[i];
    CHECK(a[i] >= 1);
    CHECK(a[i] >= std::floor(w * 0.8) - 1);
    CHECK(a[i] <= std::ceil(w * 1.2) + 1);
    changed += a[i] != g.weights()[i];
  }
  CHECK(changed > 0);
  const auto same = perturb_weights(g, 1.0, 0, 9);
  CHECK(std::ranges::equal(same, g.weights()));
}

TEST_CASE("dynamic sim: zero change reproduces the index") {
  const auto in = fixtures::grid(8, {16, 4});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time, {.landmark_count = 6});
  const DynamicReport r = dynamic_sim(index, {.cycles = 1, .percent = 0, .p2p_probe = 20, .knn_probe = 10});
  REQUIRE(r.cycles.size() == 1);
  CHECK(r.cycles[0].matches_fresh);
  const SaltIndex same = index.recustomize({index.graph().weights().begin(), index.graph().weights().end()});
  CHECK(same.customization(Direction::forward) == index.customization(Direction::forward));
  CHECK(same.landmarks() == index.landmarks());
}

TEST_CASE("dynamic sim: GRID-8 at 20% for 10 cycles") {
  const auto in = fixtures::grid(8, {16, 4});
  const SaltIndex index = fixtures::index_for(in, random_weights(in.net.travel_time, 10, 100, 3), {.landmark_count = 6});
  const DynamicReport r = dynamic_sim(index, {.cycles = 10, .p2p_probe = 50, .knn_probe = 20, .seed = 5});
  REQUIRE(r.cycles.size() == 10);
  for (const auto& c : r.cycles) {
    CHECK(c.matches_fresh);
    CHECK(c.p2p_checked == 50);
    CHECK(c.knn_checked == 20);
  }
}
