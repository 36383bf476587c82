#include "salt/graph.hpp"

#include <algorithm>
#include <string>

namespace salt {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::span<const std::uint32_t> words) {
  for (std::uint32_t w : words) {
    for (int b = 0; b < 4; ++b) {
      h ^= (w >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

}  // namespace

const char* to_string(MetricTag tag) {
  return tag == MetricTag::travel_time ? "tt" : "td";
}

MetricTag parse_metric_tag(const std::string& text) {
  if (text == "tt" || text == "travel_time") return MetricTag::travel_time;
  if (text == "td" || text == "travel_distance") return MetricTag::travel_distance;
  throw FormatError("unknown metric '" + text + "' (expected tt or td)");
}

Graph Graph::from_arcs(std::uint32_t vertex_count, std::vector<ArcInput> arcs) {
  for (const ArcInput& a : arcs) {
    if (a.tail >= vertex_count || a.head >= vertex_count)
      throw RangeError("arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) +
                       ") outside [0," + std::to_string(vertex_count) + ")");
    if (a.weight == 0 || a.weight == kInfinity)
      throw WeightError("arc weight must be positive and below the infinity sentinel");
  }
  std::erase_if(arcs, [](const ArcInput& a) { return a.tail == a.head; });
  std::sort(arcs.begin(), arcs.end(), [](const ArcInput& a, const ArcInput& b) {
    if (a.tail != b.tail) return a.tail < b.tail;
    if (a.head != b.head) return a.head < b.head;
    return a.weight < b.weight;
  });
  // Sorted by weight within a (tail, head) run, so unique keeps the minimum.
  arcs.erase(std::unique(arcs.begin(), arcs.end(),
                         [](const ArcInput& a, const ArcInput& b) {
                           return a.tail == b.tail && a.head == b.head;
                         }),
             arcs.end());

  Graph g;
  g.offsets_.assign(std::size_t{vertex_count} + 1, 0);
  g.heads_.reserve(arcs.size());
  g.weights_.reserve(arcs.size());
  for (const ArcInput& a : arcs) {
    ++g.offsets_[a.tail + 1];
    g.heads_.push_back(a.head);
    g.weights_.push_back(a.weight);
  }
  for (std::uint32_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.seal();
  return g;
}

Graph Graph::from_csr(std::vector<std::uint32_t> offsets, std::vector<Vertex> heads,
                      std::vector<Weight> weights) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != heads.size() ||
      heads.size() != weights.size())
    throw FormatError("inconsistent CSR arrays");
  const auto n = static_cast<std::uint32_t>(offsets.size() - 1);
  for (std::size_t i = 0; i + 1 < offsets.size(); ++i)
    if (offsets[i] > offsets[i + 1]) throw FormatError("CSR offsets decrease");
  for (Vertex h : heads)
    if (h >= n) throw RangeError("CSR head out of range");
  for (Weight w : weights)
    if (w == 0 || w == kInfinity) throw WeightError("CSR weight not positive");
  Graph g;
  g.offsets_ = std::move(offsets);
  g.heads_ = std::move(heads);
  g.weights_ = std::move(weights);
  g.seal();
  return g;
}

void Graph::seal() {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const std::uint32_t n = vertex_count();
  h = fnv1a(h, std::span<const std::uint32_t>(&n, 1));
  h = fnv1a(h, offsets_);
  h = fnv1a(h, heads_);
  h = fnv1a(h, weights_);
  fingerprint_ = h;
}

Graph Graph::with_weights(std::vector<Weight> weights) const {
  if (weights.size() != heads_.size())
    throw MetricError("metric has " + std::to_string(weights.size()) + " weights, graph has " +
                      std::to_string(heads_.size()) + " arcs");
  for (Weight w : weights)
    if (w == 0 || w == kInfinity) throw MetricError("metric weights must be positive");
  Graph g;
  g.offsets_ = offsets_;
  g.heads_ = heads_;
  g.weights_ = std::move(weights);
  g.seal();
  return g;
}

std::vector<ArcInput> Graph::arcs() const {
  std::vector<ArcInput> out;
  out.reserve(arc_count());
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (ArcId a = first_arc(v); a < end_arc(v); ++a) out.push_back({v, heads_[a], weights_[a]});
  return out;
}

Graph build_reverse(const Graph& g) {
  std::vector<ArcInput> arcs = g.arcs();
  for (ArcInput& a : arcs) std::swap(a.tail, a.head);
  return Graph::from_arcs(g.vertex_count(), std::move(arcs));
}

NodePermutation NodePermutation::identity(std::uint32_t n) {
  NodePermutation p;
  p.new_to_old_.resize(n);
  for (Vertex v = 0; v < n; ++v) p.new_to_old_[v] = v;
  p.old_to_new_ = p.new_to_old_;
  return p;
}

NodePermutation NodePermutation::from_new_to_old(std::vector<Vertex> new_to_old) {
  const auto n = static_cast<std::uint32_t>(new_to_old.size());
  NodePermutation p;
  p.old_to_new_.assign(n, kNoVertex);
  for (Vertex nv = 0; nv < n; ++nv) {
    const Vertex ov = new_to_old[nv];
    if (ov >= n) throw PermutationError("permutation entry out of range");
    if (p.old_to_new_[ov] != kNoVertex) throw PermutationError("permutation is not injective");
    p.old_to_new_[ov] = nv;
  }
  p.new_to_old_ = std::move(new_to_old);
  return p;
}

NodePermutation NodePermutation::from_old_to_new(std::vector<Vertex> old_to_new) {
  NodePermutation inv = from_new_to_old(std::move(old_to_new));
  NodePermutation p;
  p.old_to_new_ = std::move(inv.new_to_old_);
  p.new_to_old_ = std::move(inv.old_to_new_);
  return p;
}

Graph apply_permutation(const Graph& g, const NodePermutation& p) {
  if (p.size() != g.vertex_count()) throw PermutationError("permutation size differs from graph");
  std::vector<ArcInput> arcs = g.arcs();
  for (ArcInput& a : arcs) {
    a.tail = p.to_new(a.tail);
    a.head = p.to_new(a.head);
  }
  return Graph::from_arcs(g.vertex_count(), std::move(arcs));
}

Coordinates apply_permutation(const Coordinates& coords, const NodePermutation& p) {
  if (p.size() != coords.size()) throw PermutationError("permutation size differs from coordinates");
  Coordinates out(coords.size());
  for (Vertex nv = 0; nv < p.size(); ++nv) out[nv] = coords[p.to_old(nv)];
  return out;
}

}  // namespace salt
