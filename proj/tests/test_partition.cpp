#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "salt/generators.hpp"
#include "salt/partition.hpp"

using namespace salt;

namespace {

PartitionHierarchy load(const std::string& text, const Graph& g, LevelSpec spec = {}) {
  std::istringstream in(text);
  return load_partition_file(in, g, std::move(spec));
}

// Level-1 cell of GRID-4 vertex v in 2x2 blocks: left column of blocks 0/1,
// right column 2/3.
CellId block(Vertex v) { return (v % 4 / 2) * 2 + v / 4 / 2; }

void check_nesting_and_monotone(const Graph& g, const PartitionHierarchy& h) {
  const auto b = classify_boundaries(g, h);
  for (std::uint32_t l = 1; l < h.levels(); ++l)
    for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(h.cell(v, l + 1) == h.parent(l, h.cell(v, l)));
  for (std::uint32_t l = 1; l + 1 <= h.levels(); ++l) {
    const auto& lo = b.level(l).vertices;
    const std::set<Vertex> lower(lo.begin(), lo.end());
    CHECK(b.level(l + 1).vertices.size() <= lo.size());
    for (Vertex v : b.level(l + 1).vertices) CHECK(lower.count(v) == 1);
  }
  // vertex boundary status matches the definition directly
  for (std::uint32_t l = 1; l <= h.levels(); ++l) {
    std::set<Vertex> expect;
    std::size_t crossing = 0;
    for (const auto& a : g.arcs())
      if (h.cell(a.tail, l) != h.cell(a.head, l)) {
        expect.insert(a.tail);
        expect.insert(a.head);
        ++crossing;
      }
    const auto& got = b.level(l).vertices;
    CHECK(std::set<Vertex>(got.begin(), got.end()) == expect);
    CHECK(b.level(l).arcs.size() == crossing);
    for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK((h.boundary_level(v) >= l) == (expect.count(v) == 1));
  }
}

}  // namespace

TEST_CASE("load_partition_file examples") {
  const Graph two = Graph::from_arcs(2, {});
  const PartitionHierarchy one = load("0\n0", two, {1});
  CHECK(one.levels() == 1);
  CHECK(classify_boundaries(two, one).level(1).vertices.empty());

  const Graph arc = Graph::from_arcs(2, {{0, 1, 1}});
  const PartitionHierarchy split = load("0\n1", arc, {2});
  CHECK(classify_boundaries(arc, split).level(1).vertices == std::vector<Vertex>{0, 1});

  const auto grid = grid_graph(4);
  std::string text = "s levels 2 4 2\n";
  for (Vertex v = 0; v < 16; ++v) text += std::to_string(block(v)) + "\n";
  const PartitionHierarchy h = load(text, grid.travel_time);
  CHECK(h.levels() == 2);
  CHECK(h.cell(0, 2) == 0);
  CHECK(h.cell(3, 2) == 1);
  const auto b = classify_boundaries(grid.travel_time, h);
  CHECK(b.level(1).vertices.size() == 12);
  CHECK(b.level(2).vertices.size() == 8);
  check_nesting_and_monotone(grid.travel_time, h);
}

TEST_CASE("load_partition_file errors") {
  const auto grid = grid_graph(2);
  const Graph& g = grid.travel_time;
  CHECK_THROWS_AS(load("0\n0\n0", g, {1}), CountError);
  CHECK_THROWS_AS(load("0\n1\n2\n3\n4", g, {4}), CountError);
  CHECK_THROWS_AS(load("0\n0\n1\n5", g, {4}), RangeError);
  // explicit parents: cells 0 and 1 claimed by two different supercells
  CHECK_THROWS_AS(load("0 0\n1 1\n0 1\n1 1", g, {2, 2}), NestingError);
  const PartitionHierarchy ok = load("0 0\n1 1\n0 0\n1 1", g, {2, 2});
  CHECK(ok.parent(1, 0) == 0);
  CHECK(ok.parent(1, 1) == 1);
  // header and spec disagree
  CHECK_THROWS_AS(load("s levels 1 4\n0\n1\n2\n3", g, {2}), FormatError);
  // no spec at all: one level sized by the largest id
  CHECK(load("0\n2\n1\n1", g).cell_count(1) == 3);
}

TEST_CASE("bisect_partition examples") {
  const auto grid = grid_graph(4);
  const PartitionHierarchy h = bisect_partition(grid.travel_time, grid.coordinates, {4, 2});
  // four 2x2 blocks nested in the left and right halves
  for (Vertex a = 0; a < 16; ++a)
    for (Vertex b = 0; b < 16; ++b) {
      CHECK((h.cell(a, 1) == h.cell(b, 1)) == (block(a) == block(b)));
      CHECK((h.cell(a, 2) == h.cell(b, 2)) == ((a % 4 < 2) == (b % 4 < 2)));
    }
  const auto b = classify_boundaries(grid.travel_time, h);
  CHECK(b.level(2).vertices == std::vector<Vertex>{1, 5, 9, 13, 2, 6, 10, 14});
  check_nesting_and_monotone(grid.travel_time, h);

  const Graph single = Graph::from_arcs(1, {});
  const PartitionHierarchy s = bisect_partition(single, {{3, 4}}, {4, 2});
  CHECK(s.levels() == 2);
  CHECK(s.cell(0, 1) < 4);
  CHECK(s.cell(0, 2) < 2);

  CHECK_THROWS_AS(bisect_partition(grid.travel_time, {}, {4}), NeedsCoordinatesError);
}

TEST_CASE("bisect_partition is deterministic and metric independent") {
  const auto road = road_network(20, 18, 4);
  const LevelSpec spec{32, 8, 2};
  const PartitionHierarchy a = bisect_partition(road.travel_time, road.coordinates, spec);
  const PartitionHierarchy b = bisect_partition(road.travel_time, road.coordinates, spec);
  const PartitionHierarchy c = bisect_partition(road.travel_distance, road.coordinates, spec);
  for (std::uint32_t l = 1; l <= 3; ++l) {
    CHECK(std::ranges::equal(a.cells_at(l), b.cells_at(l)));
    CHECK(std::ranges::equal(a.cells_at(l), c.cells_at(l)));
  }
  check_nesting_and_monotone(road.travel_time, a);
}

TEST_CASE("level specs") {
  CHECK(default_level_spec(64) == LevelSpec{16});
  CHECK(default_level_spec(100000).size() == 4);
  CHECK(default_level_spec(100000).back() == 16);
  CHECK(continental_level_spec() == LevelSpec{1048576, 65536, 8192, 1024, 128, 16});
  CHECK(parse_level_spec("64,8,2", 10) == LevelSpec{64, 8, 2});
  CHECK(parse_level_spec("continental", 10) == continental_level_spec());
  CHECK_THROWS_AS(parse_level_spec("8,16", 10), FormatError);
  CHECK_THROWS_AS(parse_level_spec("8,x", 10), FormatError);
}
