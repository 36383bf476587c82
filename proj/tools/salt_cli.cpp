#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "salt/bench.hpp"
#include "salt/dimacs.hpp"
#include "salt/generators.hpp"
#include "salt/knn.hpp"
#include "salt/p2p.hpp"
#include "salt/snapshot.hpp"
#include "salt/sssp.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace salt;

namespace {

constexpr int kUsageExit = 2;

struct UsageError : Error {
  using Error::Error;
};

std::string text(Weight d) { return d == kInfinity ? "inf" : std::to_string(d); }

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Vertex> read_ids(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<Vertex> ids;
  std::string token;
  std::size_t line = 0;
  for (std::string row; std::getline(in, row);) {
    ++line;
    std::istringstream ss(row);
    while (ss >> token) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || v >= kNoVertex)
        throw UsageError(path.string() + ":" + std::to_string(line) + ": bad vertex id '" + token + "'");
      ids.push_back(static_cast<Vertex>(v));
    }
  }
  return ids;
}

// Input ids are the ones of the original graph file; the index may be relabeled.
struct IdMap {
  const SaltIndex& index;
  Vertex in(Vertex original) const {
    if (original >= index.vertex_count())
      throw UsageError("vertex id " + std::to_string(original) + " out of range [0, " +
                       std::to_string(index.vertex_count()) + ")");
    return index.permutation().to_new(original);
  }
  Vertex out(Vertex internal) const { return index.permutation().to_old(internal); }
};

void write_summary(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

json to_json(const Summary& s) { return {{"mean", s.mean}, {"median", s.median}}; }

// ---- preprocess

struct PreprocessArgs {
  std::string graph, coords, partition, levels = "default", metric = "tt", out;
  std::uint32_t landmarks = 24;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool reorder = false, no_arc_reduction = false;
};

int preprocess(const PreprocessArgs& a) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const MetricTag tag = parse_metric_tag(a.metric);
  Graph g = load_dimacs_gr(a.graph);
  Coordinates coords;
  if (!a.coords.empty()) coords = load_dimacs_co(a.coords, g.vertex_count());
  const LevelSpec spec = parse_level_spec(a.levels, g.vertex_count());
  PartitionHierarchy h;
  if (!a.partition.empty()) {
    std::ifstream in(a.partition);
    if (!in) throw Error("cannot open " + a.partition);
    h = load_partition_file(in, g, a.levels == "default" ? LevelSpec{} : spec);
  } else {
    if (coords.empty()) throw NeedsCoordinatesError("the built-in partitioner needs --coords (or pass --partition)");
    h = bisect_partition(g, coords, spec);
  }
  const double load_ms = ms_since(start);

  IndexOptions opts;
  opts.landmark_count = a.landmarks;
  opts.arc_reduction = !a.no_arc_reduction;
  opts.threads = a.threads;
  opts.seed = a.seed;
  opts.reorder = a.reorder;
  const SaltIndex index = SaltIndex::build(std::move(g), std::move(h), coords, opts);
  const auto& t = index.timings();
  save_index(index, a.out);

  std::cout << "metric\t" << to_string(tag) << '\n'
            << "vertices\t" << index.vertex_count() << '\n'
            << "arcs\t" << index.graph().arc_count() << '\n'
            << "levels\t" << index.hierarchy().levels() << '\n'
            << "landmarks\t" << index.landmarks().landmark_count() << '\n'
            << "phase\tms\n"
            << "load+partition\t" << load_ms << '\n'
            << "gs_customization\t" << t.customize_ms << '\n'
            << "landmarks\t" << t.landmarks_ms << '\n'
            << "total\t" << t.customize_ms + t.landmarks_ms << '\n';
  return 0;
}

// ---- query

struct QueryArgs {
  std::string index, kind, targets, objects, engine = "uni-salt";
  long long s = -1, t = -1;
  long long limit = -1;
  std::uint32_t k = 1;
  bool reverse = false;
};

int query(const QueryArgs& a) {
  const SaltIndex index = load_index(a.index, 1);
  const IdMap ids{index};
  if (a.s < 0) throw UsageError("-s is required");
  const Vertex s = ids.in(static_cast<Vertex>(std::min<long long>(a.s, kNoVertex)));
  const Direction dir = a.reverse ? Direction::reverse : Direction::forward;

  if (a.kind == "p2p") {
    if (a.t < 0) throw UsageError("-t is required");
    const Vertex t = ids.in(static_cast<Vertex>(std::min<long long>(a.t, kNoVertex)));
    P2PEngine engine(index);
    QueryResult r;
    if (a.engine == "dijkstra") r = engine.dijkstra(s, t);
    else if (a.engine == "bi-alt") r = engine.bi_alt(s, t);
    else if (a.engine == "crp") r = engine.crp(s, t);
    else if (a.engine == "uni-salt") r = engine.salt(s, t, SaltMode::uni);
    else if (a.engine == "bi-salt") r = engine.salt(s, t, SaltMode::bi);
    else throw UsageError("unknown engine " + a.engine);
    std::cout << text(r.distance) << '\n';
    return 0;
  }
  SsspEngine sssp(index);
  if (a.kind == "sssp") {
    const auto d = sssp.one_to_all(s, dir);
    for (Vertex v = 0; v < index.vertex_count(); ++v) std::cout << v << '\t' << text(d[ids.in(v)]) << '\n';
    return 0;
  }
  if (a.kind == "range") {
    if (a.limit < 0) throw UsageError("--limit is required");
    const Weight theta = static_cast<Weight>(std::min<long long>(a.limit, kInfinity - 1));
    auto hits = sssp.range(s, theta, dir);
    for (auto& [v, d] : hits) v = ids.out(v);
    std::sort(hits.begin(), hits.end(), [](auto x, auto y) { return std::tie(x.second, x.first) < std::tie(y.second, y.first); });
    for (auto [v, d] : hits) std::cout << v << '\t' << d << '\n';
    return 0;
  }
  if (a.kind == "many") {
    if (a.targets.empty()) throw UsageError("--targets is required");
    const auto original = read_ids(a.targets);
    std::vector<Vertex> targets;
    for (Vertex v : original) targets.push_back(ids.in(v));
    const auto d = sssp.one_to_many(s, TargetSet(targets, index.hierarchy()), dir);
    for (std::size_t i = 0; i < original.size(); ++i) std::cout << original[i] << '\t' << text(d[i].second) << '\n';
    return 0;
  }
  if (a.kind == "knn") {
    if (a.objects.empty()) throw UsageError("--objects is required");
    std::vector<Vertex> objects;
    for (Vertex v : read_ids(a.objects)) objects.push_back(ids.in(v));
    KnnEngine engine(index);
    auto result = engine.query(s, objects, a.k);
    for (auto& [v, d] : result.neighbors) v = ids.out(v);
    std::sort(result.neighbors.begin(), result.neighbors.end(),
              [](auto x, auto y) { return std::tie(x.second, x.first) < std::tie(y.second, y.first); });
    for (auto [v, d] : result.neighbors) std::cout << v << '\t' << d << '\n';
    return 0;
  }
  throw UsageError("unknown query kind " + a.kind);
}

// ---- benchmarks

int bench_p2p_cmd(const std::string& dir, std::uint32_t pairs, std::uint64_t seed, const std::string& summary) {
  const SaltIndex index = load_index(dir, 1);
  const P2PReport r = bench_p2p(index, pairs, seed);
  print(std::cout, r);
  json j{{"pairs", r.pairs}, {"seed", seed}, {"engines", json::array()}};
  for (const auto& e : r.engines)
    j["engines"].push_back({{"name", e.name}, {"time_us", to_json(e.time_us)}, {"settled", to_json(e.settled)}});
  write_summary(summary, j);
  return 0;
}

int bench_knn_cmd(const std::string& dir, const KnnConfig& config, const std::string& summary) {
  const SaltIndex index = load_index(dir, 1);
  const KnnReport r = bench_knn(index, config);
  print(std::cout, r);
  json j{{"trials", r.trials}, {"seed", config.seed}, {"rows", json::array()}};
  for (const auto& row : r.rows)
    j["rows"].push_back({{"distribution", row.distribution},
                         {"objects", row.objects},
                         {"ball", row.ball},
                         {"k", row.k},
                         {"queries", row.queries},
                         {"salt_us", to_json(row.salt_us)},
                         {"dijkstra_us", to_json(row.dijkstra_us)},
                         {"pruned_fraction", to_json(row.pruned_fraction)},
                         {"pruning_violations", row.pruning_violations}});
  write_summary(summary, j);
  return 0;
}

int dynamic_cmd(const std::string& dir, const DynamicConfig& config, unsigned threads, const std::string& summary) {
  const SaltIndex index = load_index(dir, threads);
  const DynamicReport r = dynamic_sim(index, config);
  print(std::cout, r);
  json j{{"seed", config.seed}, {"percent", config.percent}, {"fraction", config.fraction}, {"cycles", json::array()}};
  for (const auto& c : r.cycles)
    j["cycles"].push_back({{"customize_ms", c.recustomize_ms},
                           {"landmarks_ms", c.landmarks_ms},
                           {"matches_fresh", c.matches_fresh},
                           {"p2p_checked", c.p2p_checked},
                           {"knn_checked", c.knn_checked}});
  write_summary(summary, j);
  return 0;
}

// ---- generate

int generate(const std::string& kind, std::uint32_t size, std::uint32_t height, std::uint64_t seed,
             const std::string& out) {
  GeneratedNetwork net;
  if (kind == "grid") net = grid_graph(size);
  else if (kind == "road") net = road_network(size, height ? height : size, seed);
  else throw UsageError("unknown generator " + kind);
  const auto write = [](const std::string& path, auto&& fn) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    fn(f);
  };
  write(out + ".tt.gr", [&](std::ostream& f) { write_dimacs_gr(f, net.travel_time); });
  write(out + ".td.gr", [&](std::ostream& f) { write_dimacs_gr(f, net.travel_distance); });
  write(out + ".co", [&](std::ostream& f) { write_dimacs_co(f, net.coordinates); });
  std::cout << "vertices\t" << net.travel_time.vertex_count() << "\narcs\t" << net.travel_time.arc_count() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SALT shortest-path index: overlay cliques plus landmark bounds"};
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* cmd_pre = app.add_subcommand("preprocess", "build an index and write snapshots");
  cmd_pre->add_option("--graph", pre.graph, "DIMACS .gr file")->required()->check(CLI::ExistingFile);
  cmd_pre->add_option("--coords", pre.coords, "DIMACS .co file")->check(CLI::ExistingFile);
  cmd_pre->add_option("--partition", pre.partition, "partition file (default: built-in bisection)")
      ->check(CLI::ExistingFile);
  cmd_pre->add_option("--levels", pre.levels, "default | continental | |C^1|,...,|C^L|");
  cmd_pre->add_option("--landmarks", pre.landmarks, "landmark count")->capture_default_str();
  cmd_pre->add_option("--metric", pre.metric, "tt | td")->check(CLI::IsMember({"tt", "td"}));
  cmd_pre->add_option("--seed", pre.seed)->capture_default_str();
  cmd_pre->add_option("--threads", pre.threads, "0: all cores");
  cmd_pre->add_flag("--reorder", pre.reorder, "relabel vertices by boundary level");
  cmd_pre->add_flag("--no-arc-reduction", pre.no_arc_reduction);
  cmd_pre->add_option("--out", pre.out, "snapshot directory")->required();

  QueryArgs q;
  auto* cmd_query = app.add_subcommand("query", "single query against a snapshot directory");
  cmd_query->add_option("kind", q.kind, "p2p | sssp | range | many | knn")
      ->required()
      ->check(CLI::IsMember({"p2p", "sssp", "range", "many", "knn"}));
  cmd_query->add_option("--index", q.index, "snapshot directory")->default_val("index");
  cmd_query->add_option("-s", q.s, "source vertex");
  cmd_query->add_option("-t", q.t, "target vertex (p2p)");
  cmd_query->add_option("--limit", q.limit, "range threshold");
  cmd_query->add_option("--targets", q.targets, "target id file (many)");
  cmd_query->add_option("--objects", q.objects, "object id file (knn)");
  cmd_query->add_option("-k", q.k, "neighbors (knn)");
  cmd_query->add_option("--engine", q.engine, "p2p engine")
      ->check(CLI::IsMember({"dijkstra", "bi-alt", "crp", "uni-salt", "bi-salt"}));
  cmd_query->add_flag("--reverse", q.reverse, "distances to s instead of from s");

  std::string index_dir = "index", summary;
  std::uint64_t seed = 1;
  std::uint32_t pairs = 10000;
  auto* cmd_bp = app.add_subcommand("bench-p2p", "random-pair benchmark over five engines");
  cmd_bp->add_option("--index", index_dir)->capture_default_str();
  cmd_bp->add_option("--pairs", pairs)->capture_default_str();
  cmd_bp->add_option("--seed", seed)->capture_default_str();
  cmd_bp->add_option("--summary", summary, "JSON summary file");

  KnnConfig kc;
  bool no_reload = false;
  auto* cmd_bk = app.add_subcommand("bench-knn", "k-NN campaigns, uniform and ball objects");
  cmd_bk->add_option("--index", index_dir)->capture_default_str();
  cmd_bk->add_option("--sizes", kc.object_sizes, "object-set sizes")->delimiter(',');
  cmd_bk->add_option("--k", kc.k_values, "k values")->delimiter(',');
  cmd_bk->add_option("--sets", kc.object_sets, "object sets per size")->capture_default_str();
  cmd_bk->add_option("--locations", kc.locations, "query vertices per set")->capture_default_str();
  cmd_bk->add_option("--balls", kc.ball_sizes, "ball sizes |B| (default: doubling sweep)")->delimiter(',');
  cmd_bk->add_option("--ball-sets", kc.ball_sets)->capture_default_str();
  cmd_bk->add_flag("--no-reload", no_reload);
  cmd_bk->add_option("--seed", kc.seed)->capture_default_str();
  cmd_bk->add_option("--summary", summary, "JSON summary file");

  DynamicConfig dc;
  unsigned threads = 0;
  auto* cmd_dyn = app.add_subcommand("dynamic-sim", "perturb weights, recustomize, probe");
  cmd_dyn->add_option("--index", index_dir)->capture_default_str();
  cmd_dyn->add_option("--cycles", dc.cycles)->capture_default_str();
  cmd_dyn->add_option("--fraction", dc.fraction, "share of arcs perturbed")->check(CLI::Range(0.0, 1.0));
  cmd_dyn->add_option("--percent", dc.percent, "max relative change")->check(CLI::Range(0.0, 100.0));
  cmd_dyn->add_option("--p2p-probe", dc.p2p_probe)->capture_default_str();
  cmd_dyn->add_option("--knn-probe", dc.knn_probe)->capture_default_str();
  cmd_dyn->add_option("--threads", threads, "0: all cores");
  cmd_dyn->add_option("--seed", dc.seed)->capture_default_str();
  cmd_dyn->add_option("--summary", summary, "JSON summary file");

  std::string gen_kind = "road", gen_out;
  std::uint32_t gen_size = 64, gen_height = 0;
  auto* cmd_gen = app.add_subcommand("generate", "write a synthetic network as DIMACS files");
  cmd_gen->add_option("kind", gen_kind, "grid | road")->check(CLI::IsMember({"grid", "road"}));
  cmd_gen->add_option("--size", gen_size, "grid side / road width")->capture_default_str();
  cmd_gen->add_option("--height", gen_height, "road height (default: width)");
  cmd_gen->add_option("--seed", seed)->capture_default_str();
  cmd_gen->add_option("--out", gen_out, "output prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (*cmd_pre) return preprocess(pre);
    if (*cmd_query) return query(q);
    if (*cmd_bp) return bench_p2p_cmd(index_dir, pairs, seed, summary);
    if (*cmd_bk) {
      kc.reload = !no_reload;
      return bench_knn_cmd(index_dir, kc, summary);
    }
    if (*cmd_dyn) return dynamic_cmd(index_dir, dc, threads, summary);
    if (*cmd_gen) return generate(gen_kind, gen_size, gen_height, seed, gen_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const BenchFailure& e) {
    std::cerr << "FAILED: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
