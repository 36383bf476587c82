#include "salt/union_graph.hpp"

namespace salt {

void LevelScope::reset(const PartitionHierarchy& h) {
  if (h_ != &h || marks_.size() != h.levels() || generation_ == UINT32_MAX) {
    h_ = &h;
    levels_ = h.levels();
    marks_.assign(levels_, {});
    for (std::uint32_t l = 1; l <= levels_; ++l) marks_[l - 1].assign(h.cell_count(l), 0);
    generation_ = 0;
  }
  ++generation_;
}

void LevelScope::add_anchor(Vertex v) {
  for (std::uint32_t l = 1; l <= levels_; ++l) marks_[l - 1][h_->cell(v, l)] = generation_;
}

}  // namespace salt
