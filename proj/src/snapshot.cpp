#include "salt/snapshot.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace salt {

namespace {

using Magic = std::array<char, 8>;
constexpr Magic kGraphMagic{'S', 'A', 'L', 'T', 'G', 'R', '0', '1'};
constexpr Magic kPartitionMagic{'S', 'A', 'L', 'T', 'P', 'T', '0', '1'};
constexpr Magic kOverlayMagic{'S', 'A', 'L', 'T', 'O', 'V', '0', '1'};
constexpr Magic kLandmarkMagic{'S', 'A', 'L', 'T', 'L', 'M', '0', '1'};
constexpr Magic kPermutationMagic{'S', 'A', 'L', 'T', 'P', 'M', '0', '1'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void magic(const Magic& m) { out_.write(m.data(), m.size()); }
  void u32(std::uint32_t v) {
    const char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                       static_cast<char>(v >> 24)};
    out_.write(b, 4);
  }
  void u64(std::uint64_t v) {
    u32(static_cast<std::uint32_t>(v));
    u32(static_cast<std::uint32_t>(v >> 32));
  }
  template <typename T>
  void array(std::span<const T> values) {
    static_assert(sizeof(T) == 4);
    for (T v : values) u32(static_cast<std::uint32_t>(v));
  }
  void finish() {
    if (!out_) throw Error("snapshot write failed");
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  void magic(const Magic& m) {
    Magic got{};
    in_.read(got.data(), got.size());
    if (!in_ || got != m) throw FormatError("bad snapshot magic, expected " + std::string(m.data(), m.size()));
  }
  std::uint32_t u32() {
    unsigned char b[4];
    in_.read(reinterpret_cast<char*>(b), 4);
    if (!in_) throw FormatError("truncated snapshot");
    return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
  }
  std::uint64_t u64() {
    const std::uint64_t lo = u32();
    return lo | std::uint64_t{u32()} << 32;
  }
  template <typename T>
  std::vector<T> array(std::size_t count) {
    static_assert(sizeof(T) == 4);
    std::vector<T> v(count);
    for (auto& x : v) x = static_cast<T>(u32());
    return v;
  }

 private:
  std::istream& in_;
};

void write_slot_arcs(Writer& w, const SlotArcs& a) {
  w.u32(static_cast<std::uint32_t>(a.begin.size()));
  w.array<std::uint32_t>(a.begin);
  w.u32(static_cast<std::uint32_t>(a.head.size()));
  w.array<Vertex>(a.head);
  w.array<Weight>(a.weight);
}

SlotArcs read_slot_arcs(Reader& r, std::uint32_t slots, std::uint32_t n) {
  SlotArcs a;
  const std::uint32_t begins = r.u32();
  if (begins != slots + 1) throw FormatError("overlay slot count does not match the partition");
  a.begin = r.array<std::uint32_t>(begins);
  const std::uint32_t m = r.u32();
  if (a.begin.front() != 0 || a.begin.back() != m || !std::is_sorted(a.begin.begin(), a.begin.end()))
    throw FormatError("overlay arc offsets are inconsistent");
  a.head = r.array<Vertex>(m);
  a.weight = r.array<Weight>(m);
  for (Vertex h : a.head)
    if (h >= n) throw RangeError("overlay arc head out of range");
  return a;
}

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path.string());
  fn(f);
}

template <typename Fn>
void read_file(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string());
  try {
    fn(f);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace

void save_graph(std::ostream& out, const Graph& g) {
  Writer w(out);
  w.magic(kGraphMagic);
  w.u32(g.vertex_count());
  w.u32(g.arc_count());
  w.array(g.offsets());
  w.array(g.heads());
  w.array(g.weights());
  w.finish();
}

Graph load_graph(std::istream& in) {
  Reader r(in);
  r.magic(kGraphMagic);
  const std::uint32_t n = r.u32();
  const std::uint32_t m = r.u32();
  auto offsets = r.array<std::uint32_t>(std::size_t{n} + 1);
  auto heads = r.array<Vertex>(m);
  auto weights = r.array<Weight>(m);
  return Graph::from_csr(std::move(offsets), std::move(heads), std::move(weights));
}

void save_partition(std::ostream& out, const PartitionHierarchy& h) {
  Writer w(out);
  w.magic(kPartitionMagic);
  w.u32(h.levels());
  w.u32(h.vertex_count());
  w.array<std::uint32_t>(h.level_spec());
  if (h.levels() > 0) w.array(h.cells_at(1));
  for (const auto& parents : h.parent_maps()) w.array<CellId>(parents);
  w.finish();
}

PartitionHierarchy load_partition(std::istream& in, const Graph& g) {
  Reader r(in);
  r.magic(kPartitionMagic);
  const std::uint32_t levels = r.u32();
  const std::uint32_t n = r.u32();
  if (n != g.vertex_count()) throw CountError("partition snapshot is for a different vertex count");
  LevelSpec spec = r.array<std::uint32_t>(levels);
  auto level1 = r.array<CellId>(levels > 0 ? n : 0);
  std::vector<std::vector<CellId>> parents;
  for (std::uint32_t l = 1; l < levels; ++l) parents.push_back(r.array<CellId>(spec[l - 1]));
  return PartitionHierarchy(g, std::move(spec), std::move(level1), std::move(parents));
}

void save_overlay(std::ostream& out, const PartitionHierarchy& h, const Customization& forward,
                  const Customization& reverse) {
  Writer w(out);
  w.magic(kOverlayMagic);
  w.u32(h.levels());
  w.array<std::uint32_t>(h.level_spec());
  for (const Customization* c : {&forward, &reverse}) {
    w.u64(c->overlay.graph_fingerprint());
    w.u32(c->overlay.arc_reduced() ? 1 : 0);
    for (std::uint32_t l = 1; l <= h.levels(); ++l) {
      write_slot_arcs(w, c->overlay.out_arcs(l));
      write_slot_arcs(w, c->downward.arcs(l));
    }
  }
  w.finish();
}

std::pair<Customization, Customization> load_overlay(std::istream& in, const PartitionHierarchy& h,
                                                     const BoundaryClassification& boundary) {
  Reader r(in);
  r.magic(kOverlayMagic);
  const std::uint32_t levels = r.u32();
  if (levels != h.levels() || r.array<std::uint32_t>(levels) != h.level_spec())
    throw FormatError("overlay snapshot was built for a different partition");
  Customization out[2];
  for (Direction d : {Direction::forward, Direction::reverse}) {
    const std::uint64_t fingerprint = r.u64();
    const bool reduced = r.u32() != 0;
    std::vector<SlotArcs> cliques, downs;
    for (std::uint32_t l = 1; l <= levels; ++l) {
      const auto slots = static_cast<std::uint32_t>(boundary.level(l).vertices.size());
      cliques.push_back(read_slot_arcs(r, slots, h.vertex_count()));
      downs.push_back(read_slot_arcs(r, slots, h.vertex_count()));
    }
    out[static_cast<int>(d)] = {OverlayIndex(d, fingerprint, reduced, std::move(cliques), boundary),
                                DownwardGraph(d, std::move(downs))};
  }
  return {std::move(out[0]), std::move(out[1])};
}

void save_landmarks(std::ostream& out, const LandmarkTable& t) {
  Writer w(out);
  w.magic(kLandmarkMagic);
  w.u32(t.landmark_count());
  w.array(t.landmarks());
  w.array(t.records());
  w.finish();
}

LandmarkTable load_landmarks(std::istream& in, const Graph& g) {
  Reader r(in);
  r.magic(kLandmarkMagic);
  const std::uint32_t count = r.u32();
  auto landmarks = r.array<Vertex>(count);
  auto records = r.array<std::int32_t>(2 * std::size_t{count} * g.vertex_count());
  return LandmarkTable(std::move(landmarks), g.vertex_count(), std::move(records), g.fingerprint());
}

void save_permutation(std::ostream& out, const NodePermutation& p) {
  Writer w(out);
  w.magic(kPermutationMagic);
  w.u32(p.size());
  w.array(p.new_to_old());
  w.finish();
}

NodePermutation load_permutation(std::istream& in) {
  Reader r(in);
  r.magic(kPermutationMagic);
  const std::uint32_t n = r.u32();
  return NodePermutation::from_new_to_old(r.array<Vertex>(n));
}

void save_index(const SaltIndex& index, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "graph.salt", [&](std::ostream& f) { save_graph(f, index.graph()); });
  write_file(dir / "partition.salt", [&](std::ostream& f) { save_partition(f, index.hierarchy()); });
  write_file(dir / "overlay.salt", [&](std::ostream& f) {
    save_overlay(f, index.hierarchy(), index.customization(Direction::forward),
                 index.customization(Direction::reverse));
  });
  write_file(dir / "landmarks.salt", [&](std::ostream& f) { save_landmarks(f, index.landmarks()); });
  write_file(dir / "permutation.salt", [&](std::ostream& f) { save_permutation(f, index.permutation()); });
}

SaltIndex load_index(const std::filesystem::path& dir, unsigned threads) {
  Graph g;
  read_file(dir / "graph.salt", [&](std::istream& f) { g = load_graph(f); });
  PartitionHierarchy h;
  read_file(dir / "partition.salt", [&](std::istream& f) { h = load_partition(f, g); });
  const BoundaryClassification boundary = classify_boundaries(g, h);
  std::pair<Customization, Customization> custom;
  read_file(dir / "overlay.salt", [&](std::istream& f) { custom = load_overlay(f, h, boundary); });
  LandmarkTable table;
  read_file(dir / "landmarks.salt", [&](std::istream& f) { table = load_landmarks(f, g); });
  NodePermutation p = NodePermutation::identity(g.vertex_count());
  if (std::filesystem::exists(dir / "permutation.salt"))
    read_file(dir / "permutation.salt", [&](std::istream& f) { p = load_permutation(f); });
  IndexOptions options;
  options.threads = threads;
  return SaltIndex::assemble(std::move(g), std::move(h), std::move(custom.first), std::move(custom.second),
                             std::move(table), std::move(p), options);
}

}  // namespace salt
