#pragma once

#include <filesystem>
#include <iosfwd>
#include <utility>

#include "salt/graph.hpp"
#include "salt/index.hpp"
#include "salt/landmarks.hpp"
#include "salt/overlay.hpp"
#include "salt/partition.hpp"

namespace salt {

// Binary snapshots. Every field is a little-endian 32-bit integer unless
// noted; each file starts with an 8-byte magic.
//
//   SALTGR01  n, m, offsets[n+1], heads[m], weights[m]
//   SALTPT01  L, n, |C^1..C^L|, level-1 cell per vertex, parent map per level
//   SALTOV01  L, |C^1..C^L|, then forward and reverse: fingerprint (u64),
//             arc_reduced, per level the clique arcs and the downward arcs
//             (slot count, begin[], arc count, heads[], weights[])
//   SALTLM01  |S|, landmark ids[|S|], records[2|S|n] (signed)
//   SALTPM01  n, new_to_old[n]

void save_graph(std::ostream& out, const Graph& g);
Graph load_graph(std::istream& in);

void save_partition(std::ostream& out, const PartitionHierarchy& h);
PartitionHierarchy load_partition(std::istream& in, const Graph& g);

void save_overlay(std::ostream& out, const PartitionHierarchy& h, const Customization& forward,
                  const Customization& reverse);
std::pair<Customization, Customization> load_overlay(std::istream& in, const PartitionHierarchy& h,
                                                     const BoundaryClassification& boundary);

void save_landmarks(std::ostream& out, const LandmarkTable& t);
// The record count comes from the graph; the table adopts its fingerprint.
LandmarkTable load_landmarks(std::istream& in, const Graph& g);

void save_permutation(std::ostream& out, const NodePermutation& p);
NodePermutation load_permutation(std::istream& in);

// Directory layout: graph.salt, partition.salt, overlay.salt, landmarks.salt,
// permutation.salt.
void save_index(const SaltIndex& index, const std::filesystem::path& dir);
SaltIndex load_index(const std::filesystem::path& dir, unsigned threads = 0);

}  // namespace salt
