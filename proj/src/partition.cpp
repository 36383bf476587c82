#include "salt/partition.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <sstream>

namespace salt {

LevelSpec default_level_spec(std::uint32_t vertex_count) {
  // Aim for at least ~32 vertices per level-1 cell, 16 cells on top.
  const std::uint32_t budget = std::max<std::uint32_t>(1, vertex_count / 32);
  LevelSpec spec{16};
  while (spec.size() < 4 && std::uint64_t{spec.front()} * 4 <= budget) spec.insert(spec.begin(), spec.front() * 4);
  return spec;
}

LevelSpec continental_level_spec() { return {1048576, 65536, 8192, 1024, 128, 16}; }

LevelSpec parse_level_spec(const std::string& text, std::uint32_t vertex_count) {
  if (text.empty() || text == "default") return default_level_spec(vertex_count);
  if (text == "continental") return continental_level_spec();
  LevelSpec spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v == 0 || v > UINT32_MAX) throw FormatError("");
      spec.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw FormatError("bad level spec '" + text + "'");
    }
  }
  if (spec.empty() || spec.size() > 255) throw FormatError("bad level spec '" + text + "'");
  for (std::size_t i = 0; i + 1 < spec.size(); ++i)
    if (spec[i] < spec[i + 1]) throw FormatError("level spec cell counts must not grow with level");
  return spec;
}

PartitionHierarchy::PartitionHierarchy(const Graph& g, LevelSpec spec, std::vector<CellId> level1,
                                       std::vector<std::vector<CellId>> parents)
    : spec_(std::move(spec)), parents_(std::move(parents)) {
  const std::uint32_t n = g.vertex_count();
  const std::uint32_t levels = static_cast<std::uint32_t>(spec_.size());
  if (levels == 0 || levels > 255) throw FormatError("partition needs between 1 and 255 levels");
  if (level1.size() != n)
    throw CountError("partition lists " + std::to_string(level1.size()) + " vertices, graph has " +
                     std::to_string(n));
  if (parents_.size() != levels - 1) throw CountError("need one parent map per level below the top");
  for (CellId c : level1)
    if (c >= spec_[0]) throw RangeError("level-1 cell id " + std::to_string(c) + " out of range");
  for (std::uint32_t l = 1; l < levels; ++l) {
    if (parents_[l - 1].size() != spec_[l - 1]) throw CountError("parent map size differs from cell count");
    for (CellId p : parents_[l - 1])
      if (p >= spec_[l]) throw RangeError("parent cell id out of range at level " + std::to_string(l + 1));
  }

  cells_.resize(levels);
  cells_[0] = std::move(level1);
  for (std::uint32_t l = 1; l < levels; ++l) {
    cells_[l].resize(n);
    for (Vertex v = 0; v < n; ++v) cells_[l][v] = parents_[l - 1][cells_[l - 1][v]];
  }

  boundary_level_.assign(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (ArcId a = g.first_arc(u); a < g.end_arc(u); ++a) {
      const Vertex w = g.head(a);
      std::uint8_t top = 0;
      for (std::uint32_t l = levels; l >= 1; --l)
        if (cells_[l - 1][u] != cells_[l - 1][w]) {
          top = static_cast<std::uint8_t>(l);
          break;
        }
      boundary_level_[u] = std::max(boundary_level_[u], top);
      boundary_level_[w] = std::max(boundary_level_[w], top);
    }
  }

  member_begin_.assign(std::size_t{spec_[0]} + 1, 0);
  for (CellId c : cells_[0]) ++member_begin_[c + 1];
  std::partial_sum(member_begin_.begin(), member_begin_.end(), member_begin_.begin());
  members_.resize(n);
  std::vector<std::uint32_t> fill(member_begin_.begin(), member_begin_.end() - 1);
  for (Vertex v = 0; v < n; ++v) members_[fill[cells_[0][v]]++] = v;

  child_begin_.resize(levels - 1);
  children_.resize(levels - 1);
  for (std::uint32_t l = 2; l <= levels; ++l) {
    const auto& parent = parents_[l - 2];
    auto& begin = child_begin_[l - 2];
    begin.assign(std::size_t{spec_[l - 1]} + 1, 0);
    for (CellId p : parent) ++begin[p + 1];
    std::partial_sum(begin.begin(), begin.end(), begin.begin());
    auto& kids = children_[l - 2];
    kids.resize(parent.size());
    std::vector<std::uint32_t> at(begin.begin(), begin.end() - 1);
    for (CellId c = 0; c < parent.size(); ++c) kids[at[parent[c]]++] = c;
  }
}

BoundaryClassification classify_boundaries(const Graph& g, const PartitionHierarchy& h) {
  const std::uint32_t n = g.vertex_count();
  std::vector<LevelBoundary> levels(h.levels());
  for (std::uint32_t l = 1; l <= h.levels(); ++l) {
    LevelBoundary& lb = levels[l - 1];
    for (Vertex v = 0; v < n; ++v)
      if (h.boundary_level(v) >= l) lb.vertices.push_back(v);
    std::stable_sort(lb.vertices.begin(), lb.vertices.end(),
                     [&](Vertex a, Vertex b) { return h.cell(a, l) < h.cell(b, l); });
    lb.cell_begin.assign(std::size_t{h.cell_count(l)} + 1, 0);
    for (Vertex v : lb.vertices) ++lb.cell_begin[h.cell(v, l) + 1];
    std::partial_sum(lb.cell_begin.begin(), lb.cell_begin.end(), lb.cell_begin.begin());
    lb.slot_of.assign(n, kNoSlot);
    for (std::uint32_t s = 0; s < lb.vertices.size(); ++s) lb.slot_of[lb.vertices[s]] = s;
    for (Vertex u = 0; u < n; ++u)
      for (ArcId a = g.first_arc(u); a < g.end_arc(u); ++a)
        if (h.cell(u, l) != h.cell(g.head(a), l)) lb.arcs.push_back({u, g.head(a), g.weight(a)});
  }
  return BoundaryClassification(std::move(levels));
}

PartitionHierarchy load_partition_file(std::istream& in, const Graph& g, LevelSpec level_spec) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<CellId>> rows;
  LevelSpec header;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "s") {
      std::string word;
      std::uint32_t levels = 0;
      if (!rows.empty() || !header.empty() || !(ls >> word) || word != "levels" || !(ls >> levels) ||
          levels == 0)
        throw FormatError("line " + std::to_string(line_no) + ": malformed 's levels' header");
      header.resize(levels);
      for (auto& c : header)
        if (!(ls >> c) || c == 0)
          throw FormatError("line " + std::to_string(line_no) + ": malformed 's levels' header");
      continue;
    }
    std::vector<CellId> row;
    std::istringstream all(line);
    long long value = 0;
    while (all >> value) {
      if (value < 0 || value > UINT32_MAX)
        throw RangeError("line " + std::to_string(line_no) + ": cell id out of range");
      row.push_back(static_cast<CellId>(value));
    }
    if (!all.eof()) throw FormatError("line " + std::to_string(line_no) + ": expected cell ids");
    if (columns == 0) columns = row.size();
    if (row.size() != columns)
      throw FormatError("line " + std::to_string(line_no) + ": inconsistent number of columns");
    rows.push_back(std::move(row));
  }
  if (rows.size() != g.vertex_count())
    throw CountError("partition file lists " + std::to_string(rows.size()) + " vertices, graph has " +
                     std::to_string(g.vertex_count()));

  LevelSpec spec = !level_spec.empty() ? level_spec : header;
  if (!level_spec.empty() && !header.empty() && level_spec != header)
    throw FormatError("partition header disagrees with the requested level spec");
  if (spec.empty()) {
    if (columns > 1) throw FormatError("multi-column partition file needs a level spec");
    CellId top = 0;
    for (const auto& r : rows) top = std::max(top, r[0]);
    spec = {rows.empty() ? 1u : top + 1};
  }
  const auto levels = static_cast<std::uint32_t>(spec.size());
  if (columns != 1 && columns != levels)
    throw FormatError("partition file needs 1 or " + std::to_string(levels) + " columns per vertex");

  std::vector<CellId> level1(rows.size());
  for (std::size_t v = 0; v < rows.size(); ++v) level1[v] = rows[v][0];

  std::vector<std::vector<CellId>> parents(levels - 1);
  for (std::uint32_t l = 1; l < levels; ++l) {
    if (columns == 1) {
      const std::uint32_t fanout = (spec[l - 1] + spec[l] - 1) / spec[l];
      parents[l - 1].resize(spec[l - 1]);
      for (CellId c = 0; c < spec[l - 1]; ++c) parents[l - 1][c] = c / fanout;
    } else {
      parents[l - 1].assign(spec[l - 1], kNoSlot);
      for (std::size_t v = 0; v < rows.size(); ++v) {
        const CellId c = rows[v][l - 1];
        const CellId p = rows[v][l];
        if (c >= spec[l - 1] || p >= spec[l])
          throw RangeError("vertex " + std::to_string(v) + ": cell id out of range");
        if (parents[l - 1][c] != kNoSlot && parents[l - 1][c] != p)
          throw NestingError("level-" + std::to_string(l) + " cell " + std::to_string(c) +
                             " lies in two level-" + std::to_string(l + 1) + " cells");
        parents[l - 1][c] = p;
      }
      // Cells without vertices: attach to supercell 0 so the maps stay total.
      for (CellId& p : parents[l - 1])
        if (p == kNoSlot) p = 0;
    }
  }
  return PartitionHierarchy(g, std::move(spec), std::move(level1), std::move(parents));
}

namespace {

struct Bisector {
  const Coordinates& coords;

  // Splits ids into 2^bits consecutive groups, appending group boundaries.
  void split(std::span<Vertex> ids, std::uint32_t bits, std::vector<std::span<Vertex>>& out) const {
    if (bits == 0) {
      out.push_back(ids);
      return;
    }
    const std::size_t cut = bisect(ids);
    split(ids.first(cut), bits - 1, out);
    split(ids.subspan(cut), bits - 1, out);
  }

  std::size_t bisect(std::span<Vertex> ids) const {
    if (ids.empty()) return 0;
    std::int64_t min_x = INT64_MAX, max_x = INT64_MIN, min_y = INT64_MAX, max_y = INT64_MIN;
    for (Vertex v : ids) {
      min_x = std::min<std::int64_t>(min_x, coords[v].x);
      max_x = std::max<std::int64_t>(max_x, coords[v].x);
      min_y = std::min<std::int64_t>(min_y, coords[v].y);
      max_y = std::max<std::int64_t>(max_y, coords[v].y);
    }
    const bool use_x = max_x - min_x >= max_y - min_y;
    auto key = [&](Vertex v) { return use_x ? coords[v].x : coords[v].y; };
    std::sort(ids.begin(), ids.end(), [&](Vertex a, Vertex b) {
      return key(a) != key(b) ? key(a) < key(b) : a < b;
    });
    const std::int32_t median = key(ids[(ids.size() - 1) / 2]);
    const auto it = std::partition_point(ids.begin(), ids.end(), [&](Vertex v) { return key(v) <= median; });
    return static_cast<std::size_t>(it - ids.begin());
  }
};

std::uint32_t log2_exact(std::uint32_t x, const char* what) {
  if (x == 0 || !std::has_single_bit(x))
    throw FormatError(std::string("bisection needs power-of-two ") + what);
  return static_cast<std::uint32_t>(std::countr_zero(x));
}

}  // namespace

PartitionHierarchy bisect_partition(const Graph& g, const Coordinates& coords, const LevelSpec& spec) {
  if (coords.size() != g.vertex_count())
    throw NeedsCoordinatesError("coordinate bisection needs one coordinate per vertex");
  if (spec.empty()) throw FormatError("empty level spec");
  const auto levels = static_cast<std::uint32_t>(spec.size());
  std::vector<std::uint32_t> bits(levels);
  bits[levels - 1] = log2_exact(spec[levels - 1], "top-level cell count");
  for (std::uint32_t l = 1; l < levels; ++l) {
    if (spec[l - 1] % spec[l] != 0) throw FormatError("bisection needs integral cell-count ratios");
    bits[l - 1] = log2_exact(spec[l - 1] / spec[l], "cell-count ratios");
  }

  std::vector<Vertex> ids(g.vertex_count());
  std::iota(ids.begin(), ids.end(), 0);
  const Bisector bisector{coords};

  // Groups at the current level, indexed by cell id.
  std::vector<std::span<Vertex>> groups;
  bisector.split(ids, bits[levels - 1], groups);
  for (std::uint32_t l = levels - 1; l >= 1; --l) {
    std::vector<std::span<Vertex>> finer;
    for (auto group : groups) bisector.split(group, bits[l - 1], finer);
    groups = std::move(finer);
  }

  std::vector<CellId> level1(g.vertex_count());
  for (CellId c = 0; c < groups.size(); ++c)
    for (Vertex v : groups[c]) level1[v] = c;
  std::vector<std::vector<CellId>> parents(levels - 1);
  for (std::uint32_t l = 1; l < levels; ++l) {
    parents[l - 1].resize(spec[l - 1]);
    for (CellId c = 0; c < spec[l - 1]; ++c) parents[l - 1][c] = c >> bits[l - 1];
  }
  return PartitionHierarchy(g, spec, std::move(level1), std::move(parents));
}

PartitionHierarchy apply_permutation(const PartitionHierarchy& h, const Graph& permuted,
                                     const NodePermutation& p) {
  if (p.size() != h.vertex_count()) throw PermutationError("permutation size differs from partition");
  std::vector<CellId> level1(h.vertex_count());
  for (Vertex nv = 0; nv < p.size(); ++nv) level1[nv] = h.cell(p.to_old(nv), 1);
  return PartitionHierarchy(permuted, h.level_spec(), std::move(level1), h.parent_maps());
}

NodePermutation level_ordering(const PartitionHierarchy& h) {
  std::vector<Vertex> order(h.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    if (h.boundary_level(a) != h.boundary_level(b)) return h.boundary_level(a) > h.boundary_level(b);
    if (h.cell(a, 1) != h.cell(b, 1)) return h.cell(a, 1) < h.cell(b, 1);
    return a < b;
  });
  return NodePermutation::from_new_to_old(std::move(order));
}

}  // namespace salt
