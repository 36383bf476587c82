#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "salt/index.hpp"

namespace salt {

// Raised when two engines disagree; the message names the offending query.
struct BenchFailure : Error {
  using Error::Error;
};

struct Summary {
  double mean = 0;
  double median = 0;
};
Summary summarize(std::vector<double> values);

struct EngineStats {
  std::string name;
  Summary time_us;
  Summary settled;
};

struct P2PReport {
  std::uint32_t pairs = 0;
  std::vector<EngineStats> engines;  // dijkstra, bi-alt, crp, uni-salt, bi-salt
  const EngineStats& engine(const std::string& name) const;
};

// Random pairs (uniform, seeded) through every engine; throws BenchFailure on
// the first disagreement.
P2PReport bench_p2p(const SaltIndex& index, std::uint32_t pairs, std::uint64_t seed);

struct KnnConfig {
  std::vector<std::uint32_t> object_sizes{16, 32, 64, 128, 256, 512, 1024};
  std::vector<std::uint32_t> k_values{1, 2, 4, 8, 16};
  std::uint32_t object_sets = 10;
  std::uint32_t locations = 10;
  // Ball campaign: |O| = min(2^14, |V|/2) objects drawn from a Dijkstra ball
  // of each size; sizes below |O| are skipped. Empty: doubling sweep up to |V|.
  std::vector<std::uint32_t> ball_sizes;
  std::uint32_t ball_sets = 5;
  bool reload = true;
  std::uint64_t seed = 1;
};

struct KnnRow {
  std::string distribution;  // "uniform" or "ball"
  std::uint32_t objects = 0;
  std::uint32_t ball = 0;  // |B| for the ball campaign
  std::uint32_t k = 0;
  std::uint32_t queries = 0;
  Summary salt_us;
  Summary dijkstra_us;
  Summary pruned_fraction;
  std::uint32_t pruning_violations = 0;
};

struct KnnReport {
  std::vector<KnnRow> rows;
  std::uint64_t trials = 0;
};

// Every query is checked against the Dijkstra baseline (distance lists equal,
// oracle neighbors alive after pruning); throws BenchFailure with the trial
// seed on a mismatch.
KnnReport bench_knn(const SaltIndex& index, const KnnConfig& config);

// Objects as a random subset of the first |B| vertices settled by Dijkstra
// from `center`.
std::vector<Vertex> ball_objects(const Graph& g, Vertex center, std::uint32_t ball, std::uint32_t count,
                                 std::uint64_t seed);

struct DynamicConfig {
  std::uint32_t cycles = 10;
  double fraction = 1.0;  // share of arcs perturbed per cycle
  double percent = 20.0;  // each perturbed weight scaled by 1 +- U(0, percent/100)
  std::uint32_t p2p_probe = 100;
  std::uint32_t knn_probe = 100;
  std::uint64_t seed = 1;
};

struct DynamicCycle {
  double recustomize_ms = 0;  // overlays of both directions
  double landmarks_ms = 0;
  bool matches_fresh = false;
  std::uint32_t p2p_checked = 0;
  std::uint32_t knn_checked = 0;
};

struct DynamicReport {
  std::vector<DynamicCycle> cycles;
};

// Weights scaled independently per arc; never below 1.
std::vector<Weight> perturb_weights(const Graph& g, double fraction, double percent, std::uint64_t seed);

// Perturb, recustomize, compare with a fresh build, probe p2p and k-NN
// against Dijkstra. Throws BenchFailure on any mismatch.
DynamicReport dynamic_sim(const SaltIndex& index, const DynamicConfig& config);

void print(std::ostream& out, const P2PReport& r);
void print(std::ostream& out, const KnnReport& r);
void print(std::ostream& out, const DynamicReport& r);

}  // namespace salt
