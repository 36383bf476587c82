#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "salt/p2p.hpp"
#include "salt/random.hpp"
#include "salt/snapshot.hpp"

using namespace salt;
namespace fs = std::filesystem;

namespace {

std::string bytes_of(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("salt-test-" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kFiles[] = {"graph.salt", "partition.salt", "overlay.salt", "landmarks.salt", "permutation.salt"};

}  // namespace

TEST_CASE("graph snapshot round-trips and starts with its magic") {
  const auto in = fixtures::road(20, 20, 3, {16, 4});
  std::stringstream buf;
  save_graph(buf, in.net.travel_time);
  CHECK(buf.str().substr(0, 8) == "SALTGR01");
  const Graph back = load_graph(buf);
  CHECK(back == in.net.travel_time);
  CHECK(back.fingerprint() == in.net.travel_time.fingerprint());
}

TEST_CASE("partition snapshot round-trips") {
  const auto in = fixtures::grid(8, {16, 4, 2});
  std::stringstream buf;
  save_partition(buf, in.hierarchy);
  const PartitionHierarchy back = load_partition(buf, in.net.travel_time);
  REQUIRE(back.levels() == 3);
  for (std::uint32_t l = 1; l <= 3; ++l) {
    CHECK(back.cell_count(l) == in.hierarchy.cell_count(l));
    for (Vertex v = 0; v < 64; ++v) CHECK(back.cell(v, l) == in.hierarchy.cell(v, l));
  }
}

TEST_CASE("landmark snapshot keeps the 2S slot layout") {
  const auto in = fixtures::grid(6, {4, 2});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time, {.landmark_count = 5});
  std::stringstream buf;
  save_landmarks(buf, index.landmarks());
  const std::string raw = buf.str();
  CHECK(raw.substr(0, 8) == "SALTLM01");
  CHECK(raw.size() == 8 + 4 + 4 * 5 + 4 * 2 * 5 * 36);
  const LandmarkTable back = load_landmarks(buf, index.graph());
  CHECK(back == index.landmarks());
  CHECK(back.graph_fingerprint() == index.graph().fingerprint());
}

TEST_CASE("truncated or foreign files are rejected") {
  const auto in = fixtures::grid(4, {4, 2});
  std::stringstream buf;
  save_graph(buf, in.net.travel_time);
  const std::string raw = buf.str();
  std::stringstream truncated(raw.substr(0, raw.size() - 3));
  CHECK_THROWS_AS(load_graph(truncated), FormatError);
  std::stringstream foreign("SALTXX01" + raw.substr(8));
  CHECK_THROWS_AS(load_graph(foreign), FormatError);
}

TEST_CASE("index snapshots load back bit-identical and answer the same queries") {
  for (bool reorder : {false, true}) {
    CAPTURE(reorder);
    const auto in = fixtures::grid(8, {16, 4});
    const SaltIndex index = fixtures::index_for(in, in.net.travel_time, {.landmark_count = 6, .reorder = reorder});
    TempDir a("a"), b("b");
    save_index(index, a.path);
    const SaltIndex back = load_index(a.path, 1);
    save_index(back, b.path);
    for (const char* f : kFiles) {
      CAPTURE(f);
      CHECK(bytes_of(a.path / f) == bytes_of(b.path / f));
    }
    CHECK(back.graph() == index.graph());
    CHECK(back.customization(Direction::forward) == index.customization(Direction::forward));
    CHECK(back.customization(Direction::reverse) == index.customization(Direction::reverse));
    CHECK(back.landmarks() == index.landmarks());
    CHECK(std::ranges::equal(back.permutation().new_to_old(), index.permutation().new_to_old()));

    P2PEngine x(index), y(back);
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
      const auto s = static_cast<Vertex>(rng.below(64));
      const auto t = static_cast<Vertex>(rng.below(64));
      CHECK(x.salt(s, t, SaltMode::bi).distance == y.salt(s, t, SaltMode::bi).distance);
    }
  }
}

TEST_CASE("rebuilding with the same seed writes identical snapshot bytes") {
  const auto in = fixtures::road(24, 24, 9, {16, 4});
  TempDir a("seed-a"), b("seed-b");
  save_index(fixtures::index_for(in, in.net.travel_time, {.landmark_count = 8, .threads = 1, .seed = 4}), a.path);
  save_index(fixtures::index_for(in, in.net.travel_time, {.landmark_count = 8, .threads = 2, .seed = 4}), b.path);
  for (const char* f : kFiles) {
    CAPTURE(f);
    CHECK(bytes_of(a.path / f) == bytes_of(b.path / f));
  }
}

TEST_CASE("an overlay saved for other weights is reported stale") {
  const auto in = fixtures::grid(6, {4, 2});
  const SaltIndex index = fixtures::index_for(in, in.net.travel_time, {.landmark_count = 4});
  const SaltIndex other = index.recustomize(std::vector<Weight>(index.graph().arc_count(), 3));
  TempDir a("stale");
  save_index(index, a.path);
  {
    std::ofstream f(a.path / "overlay.salt", std::ios::binary);
    save_overlay(f, other.hierarchy(), other.customization(Direction::forward),
                 other.customization(Direction::reverse));
  }
  CHECK_THROWS_AS(load_index(a.path, 1), StaleIndexError);
}
