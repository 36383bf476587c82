#include "salt/index.hpp"

#include <chrono>

#include "salt/sssp.hpp"

namespace salt {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void SaltIndex::customize_all() {
  const auto start = std::chrono::steady_clock::now();
  CustomizeOptions opts{options_.arc_reduction, options_.threads};
  for (Direction d : {Direction::forward, Direction::reverse}) {
    const int i = static_cast<int>(d);
    if (!customizers_[i]) customizers_[i] = std::make_shared<Customizer>(graphs_[i], d, *hierarchy_, *boundary_, opts);
    customizations_[i] = customizers_[i]->run(graphs_[i], *hierarchy_, *boundary_);
  }
  timings_.customize_ms = ms_since(start);
}

void SaltIndex::compute_landmarks(std::span<const Vertex> landmarks) {
  const auto start = std::chrono::steady_clock::now();
  table_ = build_landmark_table(
      graphs_[0], landmarks,
      [this](Vertex s, Direction d) { return SsspEngine(*this).one_to_all(s, d); }, options_.threads);
  timings_.landmarks_ms = ms_since(start);
}

SaltIndex SaltIndex::build(Graph g, PartitionHierarchy h, const Coordinates& coords, IndexOptions options) {
  if (h.vertex_count() != g.vertex_count()) throw CountError("partition and graph sizes differ");
  SaltIndex index;
  index.options_ = options;
  Coordinates placed = coords;
  if (options.reorder) {
    const NodePermutation p = level_ordering(h);
    g = apply_permutation(g, p);
    h = apply_permutation(h, g, p);
    if (!placed.empty()) placed = apply_permutation(placed, p);
    // permutation() maps index ids back to input ids
    index.permutation_ = p;
  } else {
    index.permutation_ = NodePermutation::identity(g.vertex_count());
  }
  index.graphs_[1] = build_reverse(g);
  index.graphs_[0] = std::move(g);
  index.boundary_ = std::make_shared<const BoundaryClassification>(classify_boundaries(index.graphs_[0], h));
  index.hierarchy_ = std::make_shared<const PartitionHierarchy>(std::move(h));
  index.customize_all();
  const auto landmarks = select_partition_corners(index.graphs_[0], *index.hierarchy_, placed,
                                                  options.landmark_count, options.seed);
  index.compute_landmarks(landmarks);
  return index;
}

SaltIndex SaltIndex::assemble(Graph g, PartitionHierarchy h, Customization forward, Customization reverse,
                              LandmarkTable table, NodePermutation permutation, IndexOptions options) {
  if (h.vertex_count() != g.vertex_count() || table.vertex_count() != g.vertex_count() ||
      permutation.size() != g.vertex_count())
    throw CountError("index parts disagree on the vertex count");
  SaltIndex index;
  index.options_ = options;
  index.options_.landmark_count = table.landmark_count();
  index.options_.arc_reduction = forward.overlay.arc_reduced();
  index.graphs_[1] = build_reverse(g);
  index.graphs_[0] = std::move(g);
  index.boundary_ = std::make_shared<const BoundaryClassification>(classify_boundaries(index.graphs_[0], h));
  index.hierarchy_ = std::make_shared<const PartitionHierarchy>(std::move(h));
  index.customizations_ = {std::move(forward), std::move(reverse)};
  index.table_ = std::move(table);
  index.permutation_ = std::move(permutation);
  index.check_overlay(Direction::forward);
  index.check_overlay(Direction::reverse);
  index.check_landmarks();
  return index;
}

SaltIndex SaltIndex::recustomize(std::vector<Weight> weights) const {
  SaltIndex next(*this);
  next.graphs_[0] = graphs_[0].with_weights(std::move(weights));
  next.graphs_[1] = build_reverse(next.graphs_[0]);
  next.customize_all();
  next.compute_landmarks(table_.landmarks());
  return next;
}

void SaltIndex::check_overlay(Direction d) const {
  const int i = static_cast<int>(d);
  const Customization& c = customizations_[i];
  if (c.overlay.graph_fingerprint() != graphs_[i].fingerprint() || c.overlay.direction() != d ||
      c.overlay.levels() != hierarchy_->levels() || c.downward.levels() != hierarchy_->levels())
    throw StaleIndexError(std::string(to_string(d)) + " overlay does not match the current metric");
}

void SaltIndex::check_landmarks() const {
  if (table_.graph_fingerprint() != graphs_[0].fingerprint() || table_.vertex_count() != vertex_count())
    throw StaleIndexError("landmark table does not match the current metric");
}

}  // namespace salt
