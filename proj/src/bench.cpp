#include "salt/bench.hpp"

#include <algorithm>
#include <cmath>
#include <chrono>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "salt/knn.hpp"
#include "salt/p2p.hpp"
#include "salt/random.hpp"

namespace salt {

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
auto timed(double& us, Fn&& fn) {
  const auto start = Clock::now();
  auto result = fn();
  us = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
  return result;
}

// `count` distinct values from [0, n), in draw order.
std::vector<Vertex> sample_distinct(Rng& rng, std::uint32_t n, std::uint32_t count) {
  count = std::min(count, n);
  std::vector<Vertex> out;
  out.reserve(count);
  if (std::uint64_t{count} * 4 < n) {
    std::unordered_set<Vertex> seen;
    while (out.size() < count) {
      const auto v = static_cast<Vertex>(rng.below(n));
      if (seen.insert(v).second) out.push_back(v);
    }
  } else {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (std::uint32_t i = 0; i < count; ++i) {
      std::swap(all[i], all[i + rng.below(n - i)]);
      out.push_back(all[i]);
    }
  }
  return out;
}

std::string pair_text(Vertex s, Vertex t) { return "(" + std::to_string(s) + ", " + std::to_string(t) + ")"; }

std::string list_text(const std::vector<std::pair<Vertex, Weight>>& l) {
  std::string out;
  for (auto [v, d] : l) out += " " + std::to_string(v) + ":" + std::to_string(d);
  return out.empty() ? " (empty)" : out;
}

}  // namespace

Summary summarize(std::vector<double> values) {
  Summary s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  s.median = values.size() % 2 ? values[m] : (values[m - 1] + values[m]) / 2;
  return s;
}

const EngineStats& P2PReport::engine(const std::string& name) const {
  for (const auto& e : engines)
    if (e.name == name) return e;
  throw Error("no engine named " + name);
}

P2PReport bench_p2p(const SaltIndex& index, std::uint32_t pairs, std::uint64_t seed) {
  P2PEngine engine(index);
  const char* names[] = {"dijkstra", "bi-alt", "crp", "uni-salt", "bi-salt"};
  std::vector<std::vector<double>> times(5), settled(5);
  Rng rng(seed);
  for (std::uint32_t i = 0; i < pairs; ++i) {
    const auto s = static_cast<Vertex>(rng.below(index.vertex_count()));
    const auto t = static_cast<Vertex>(rng.below(index.vertex_count()));
    double us[5];
    const QueryResult r[5] = {
        timed(us[0], [&] { return engine.dijkstra(s, t); }),
        timed(us[1], [&] { return engine.bi_alt(s, t); }),
        timed(us[2], [&] { return engine.crp(s, t); }),
        timed(us[3], [&] { return engine.salt(s, t, SaltMode::uni); }),
        timed(us[4], [&] { return engine.salt(s, t, SaltMode::bi); }),
    };
    for (int e = 0; e < 5; ++e) {
      if (r[e].distance != r[0].distance)
        throw BenchFailure(std::string(names[e]) + " returned " + std::to_string(r[e].distance) + " for pair " +
                           pair_text(s, t) + ", dijkstra " + std::to_string(r[0].distance));
      times[e].push_back(us[e]);
      settled[e].push_back(static_cast<double>(r[e].settled));
    }
  }
  P2PReport report;
  report.pairs = pairs;
  for (int e = 0; e < 5; ++e) report.engines.push_back({names[e], summarize(times[e]), summarize(settled[e])});
  return report;
}

std::vector<Vertex> ball_objects(const Graph& g, Vertex center, std::uint32_t ball, std::uint32_t count,
                                 std::uint64_t seed) {
  LabelStore labels;
  MinHeap heap;
  labels.reset(g.vertex_count());
  labels.set(center, 0, kNoVertex);
  heap.push(0, center);
  std::vector<Vertex> members;
  while (!heap.empty() && members.size() < ball) {
    const HeapEntry e = heap.pop();
    const Vertex u = e.vertex;
    const Weight du = labels.dist(u);
    if (labels.settled(u) || static_cast<Weight>(e.key) != du) continue;
    labels.settle(u);
    members.push_back(u);
    for (ArcId a = g.first_arc(u); a < g.end_arc(u); ++a) {
      const Weight nd = add_saturated(du, g.weight(a));
      if (nd < labels.dist(g.head(a))) {
        labels.set(g.head(a), nd, u);
        heap.push(nd, g.head(a));
      }
    }
  }
  Rng rng(seed);
  std::vector<Vertex> out;
  for (Vertex i : sample_distinct(rng, static_cast<std::uint32_t>(members.size()), count)) out.push_back(members[i]);
  return out;
}

namespace {

struct KnnCampaign {
  const SaltIndex& index;
  const KnnConfig& config;
  KnnEngine engine{index};
  KnnReport report;

  // One object set, `locations` query vertices, every k.
  void run_set(std::vector<KnnRow>& rows, const std::vector<Vertex>& objects, Rng& rng,
               std::vector<std::vector<double>>& salt_us, std::vector<std::vector<double>>& dijkstra_us,
               std::vector<std::vector<double>>& pruned, std::uint64_t set_seed) {
    const Graph& g = index.graph();
    ObjectSet set(objects, index.hierarchy());
    for (std::uint32_t loc = 0; loc < config.locations; ++loc) {
      const auto s = static_cast<Vertex>(rng.below(g.vertex_count()));
      for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
        const std::uint32_t k = config.k_values[ki];
        double t_salt = 0, t_dijkstra = 0;
        const KnnResult got = timed(t_salt, [&] { return engine.query(s, set, k, {config.reload}); });
        const auto want = timed(t_dijkstra, [&] { return knn_dijkstra(g, s, set, k); });
        const std::string where = "set seed " + std::to_string(set_seed) + ", s = " + std::to_string(s) +
                                  ", k = " + std::to_string(k) + ", |O| = " + std::to_string(set.size());
        if (got.neighbors != want)
          throw BenchFailure("k-NN mismatch (" + where + "): got" + list_text(got.neighbors) + ", expected" +
                             list_text(want));
        pruning_phase(index.landmarks(), s, set, std::min(k, set.size()));
        for (auto [o, d] : want) {
          const auto it = std::lower_bound(set.vertices().begin(), set.vertices().end(), o);
          if (!set.alive(static_cast<std::uint32_t>(it - set.vertices().begin()))) ++rows[ki].pruning_violations;
        }
        salt_us[ki].push_back(t_salt);
        dijkstra_us[ki].push_back(t_dijkstra);
        pruned[ki].push_back(got.pruning.pruned_fraction);
        ++rows[ki].queries;
        ++report.trials;
      }
    }
  }

  template <typename Draw>
  void run(const std::string& distribution, std::uint32_t objects, std::uint32_t ball, std::uint32_t sets,
           std::uint64_t campaign_seed, Draw&& draw) {
    const std::size_t nk = config.k_values.size();
    std::vector<KnnRow> rows(nk);
    std::vector<std::vector<double>> salt_us(nk), dijkstra_us(nk), pruned(nk);
    for (std::size_t ki = 0; ki < nk; ++ki) {
      rows[ki].distribution = distribution;
      rows[ki].objects = objects;
      rows[ki].ball = ball;
      rows[ki].k = config.k_values[ki];
    }
    for (std::uint32_t set = 0; set < sets; ++set) {
      const std::uint64_t set_seed = campaign_seed * 1000003 + set;
      Rng rng(set_seed);
      const auto chosen = draw(rng, set_seed);
      run_set(rows, chosen, rng, salt_us, dijkstra_us, pruned, set_seed);
    }
    for (std::size_t ki = 0; ki < nk; ++ki) {
      rows[ki].salt_us = summarize(salt_us[ki]);
      rows[ki].dijkstra_us = summarize(dijkstra_us[ki]);
      rows[ki].pruned_fraction = summarize(pruned[ki]);
      report.rows.push_back(rows[ki]);
    }
  }
};

}  // namespace

KnnReport bench_knn(const SaltIndex& index, const KnnConfig& config) {
  KnnCampaign c{index, config, KnnEngine(index), {}};
  const std::uint32_t n = index.vertex_count();
  std::uint64_t campaign = config.seed;
  for (std::uint32_t size : config.object_sizes) {
    if (size > n) continue;
    c.run("uniform", size, 0, config.object_sets, ++campaign,
          [&](Rng& rng, std::uint64_t) { return sample_distinct(rng, n, size); });
  }
  const std::uint32_t objects = std::max<std::uint32_t>(1, std::min<std::uint32_t>(1u << 14, n / 2));
  std::vector<std::uint32_t> balls = config.ball_sizes;
  if (balls.empty()) {
    for (std::uint64_t b = objects; b < n; b *= 2) balls.push_back(static_cast<std::uint32_t>(b));
    balls.push_back(n);
  }
  for (std::uint32_t ball : balls) {
    if (ball < objects || ball > n) continue;
    c.run("ball", objects, ball, config.ball_sets, ++campaign, [&](Rng& rng, std::uint64_t seed) {
      const auto center = static_cast<Vertex>(rng.below(n));
      return ball_objects(index.graph(), center, ball, objects, seed);
    });
  }
  return std::move(c.report);
}

std::vector<Weight> perturb_weights(const Graph& g, double fraction, double percent, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Weight> w(g.weights().begin(), g.weights().end());
  for (Weight& x : w) {
    if (rng.unit() >= fraction) continue;
    const double scale = 1.0 + (2.0 * rng.unit() - 1.0) * percent / 100.0;
    const double v = std::round(static_cast<double>(x) * scale);
    x = static_cast<Weight>(std::clamp(v, 1.0, 2147483647.0));
  }
  return w;
}

DynamicReport dynamic_sim(const SaltIndex& index, const DynamicConfig& config) {
  DynamicReport report;
  Rng rng(config.seed);
  for (std::uint32_t cycle = 0; cycle < config.cycles; ++cycle) {
    DynamicCycle row;
    const auto weights = perturb_weights(index.graph(), config.fraction, config.percent, config.seed + cycle + 1);
    const SaltIndex next = index.recustomize(weights);
    row.recustomize_ms = next.timings().customize_ms;
    row.landmarks_ms = next.timings().landmarks_ms;

    // Fresh build over the same metric, same landmark vertices.
    const Graph& g = next.graph();
    const Graph r = build_reverse(g);
    CustomizeOptions opts{next.options().arc_reduction, next.options().threads};
    row.matches_fresh =
        next.customization(Direction::forward) ==
            customize(g, Direction::forward, next.hierarchy(), next.boundary(), opts) &&
        next.customization(Direction::reverse) ==
            customize(r, Direction::reverse, next.hierarchy(), next.boundary(), opts) &&
        next.landmarks() == build_landmark_table(g, next.landmarks().landmarks(), next.options().threads);
    if (!row.matches_fresh)
      throw BenchFailure("cycle " + std::to_string(cycle) + ": recustomized index differs from a fresh build");

    P2PEngine p2p(next);
    for (std::uint32_t i = 0; i < config.p2p_probe; ++i) {
      const auto s = static_cast<Vertex>(rng.below(g.vertex_count()));
      const auto t = static_cast<Vertex>(rng.below(g.vertex_count()));
      const Weight want = p2p.dijkstra(s, t).distance;
      const Weight got[] = {p2p.bi_alt(s, t).distance, p2p.crp(s, t).distance,
                            p2p.salt(s, t, SaltMode::uni).distance, p2p.salt(s, t, SaltMode::bi).distance};
      for (Weight d : got)
        if (d != want)
          throw BenchFailure("cycle " + std::to_string(cycle) + ": p2p mismatch for pair " + pair_text(s, t));
      ++row.p2p_checked;
    }
    KnnEngine knn(next);
    const std::uint32_t ks[] = {1, 2, 4, 8, 16};
    for (std::uint32_t i = 0; i < config.knn_probe; ++i) {
      const auto s = static_cast<Vertex>(rng.below(g.vertex_count()));
      const auto size = static_cast<std::uint32_t>(16 + rng.below(241));
      const auto objects = sample_distinct(rng, g.vertex_count(), size);
      const std::uint32_t k = ks[rng.below(5)];
      ObjectSet set(objects, next.hierarchy());
      const auto got = knn.query(s, set, k).neighbors;
      if (got != knn_dijkstra(g, s, set, k))
        throw BenchFailure("cycle " + std::to_string(cycle) + ": k-NN mismatch at s = " + std::to_string(s));
      ++row.knn_checked;
    }
    report.cycles.push_back(row);
  }
  return report;
}

void print(std::ostream& out, const P2PReport& r) {
  out << "engine\tpairs\tmean_us\tmedian_us\tmean_settled\tmedian_settled\n";
  for (const auto& e : r.engines)
    out << e.name << '\t' << r.pairs << '\t' << e.time_us.mean << '\t' << e.time_us.median << '\t'
        << e.settled.mean << '\t' << e.settled.median << '\n';
}

void print(std::ostream& out, const KnnReport& r) {
  out << "distribution\tobjects\tball\tk\tqueries\tsalt_mean_us\tsalt_median_us\tdijkstra_mean_us\t"
         "dijkstra_median_us\tpruned_mean\tpruning_violations\n";
  for (const auto& row : r.rows)
    out << row.distribution << '\t' << row.objects << '\t' << row.ball << '\t' << row.k << '\t' << row.queries
        << '\t' << row.salt_us.mean << '\t' << row.salt_us.median << '\t' << row.dijkstra_us.mean << '\t'
        << row.dijkstra_us.median << '\t' << row.pruned_fraction.mean << '\t' << row.pruning_violations << '\n';
}

void print(std::ostream& out, const DynamicReport& r) {
  out << "cycle\tcustomize_ms\tlandmarks_ms\tmatches_fresh\tp2p_checked\tknn_checked\n";
  for (std::size_t i = 0; i < r.cycles.size(); ++i) {
    const auto& c = r.cycles[i];
    out << i << '\t' << c.recustomize_ms << '\t' << c.landmarks_ms << '\t' << (c.matches_fresh ? "yes" : "no")
        << '\t' << c.p2p_checked << '\t' << c.knn_checked << '\n';
  }
}

}  // namespace salt
