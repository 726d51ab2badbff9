// Acceptance suite: one PASS / FAIL / SKIP line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>

#include "hyperclust/annealing.hpp"
#include "hyperclust/cli.hpp"
#include "hyperclust/evaluation.hpp"
#include "hyperclust/generator.hpp"
#include "hyperclust/io.hpp"
#include "hyperclust/model_selection.hpp"
#include "hyperclust/rng.hpp"
#include "oracles.hpp"

using namespace hyperclust;
namespace fs = std::filesystem;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict = Verdict::Fail;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format(const char* pattern, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, pattern, args...);
  return buffer;
}

Hypergraph random_hypergraph(std::mt19937_64& rng, std::uint32_t n, std::uint32_t edges,
                             std::uint32_t min_size, std::uint32_t max_size) {
  std::vector<std::vector<VertexId>> list;
  for (std::uint32_t e = 0; e < edges; ++e) {
    std::vector<VertexId> edge;
    const std::size_t size = min_size + rng() % (max_size - min_size + 1);
    while (edge.size() < size) {
      const VertexId v = rng() % n;
      if (std::find(edge.begin(), edge.end(), v) == edge.end()) edge.push_back(v);
    }
    list.push_back(edge);
  }
  return Hypergraph::build(list, {.num_vertices = n});
}

// 1. exp(ln Z) equals brute-force counts on every small compression.
Outcome counting_oracles() {
  const auto start = Clock::now();
  using Signature = std::pair<std::vector<std::uint64_t>, std::map<std::vector<std::uint32_t>, std::uint64_t>>;
  std::map<Signature, std::uint64_t> multi_memo, simple_memo;
  std::map<Signature, oracle::StubCount> stub_memo;
  std::uint64_t compressions = 0, mismatches = 0, quotient_failures = 0;
  const std::uint32_t m = 3;
  for (std::uint32_t n = 1; n <= 6; ++n) {
    const auto labelings = oracle::restricted_growth_labelings(n, m);
    for (const auto& instance : oracle::canonical_instances(n, 3, 3)) {
      std::vector<std::vector<VertexId>> edges(instance.edges.begin(), instance.edges.end());
      const auto h = Hypergraph::build(edges, {.num_vertices = n});
      Objective multi(h, ObjectiveKind::MultiHypergraph);
      Objective simple(h, ObjectiveKind::SimpleHypergraph);
      Objective dc(h, ObjectiveKind::DegreeCorrected);
      for (const auto& labels : labelings) {
        ++compressions;
        CompressionState state(h, {labels, m});
        const auto types = oracle::type_counts(instance, labels, m);
        std::vector<std::uint64_t> sizes(m, 0), degree_sums(m, 0);
        for (auto l : labels) ++sizes[l];
        for (const auto& e : instance.edges) {
          for (auto v : e) ++degree_sums[labels[v]];
        }
        const Signature by_size{sizes, types};
        const Signature by_degree{degree_sums, types};

        auto [mi, fresh_m] = multi_memo.try_emplace(by_size);
        if (fresh_m) mi->second = oracle::count_multi(instance, labels, m);
        auto [si, fresh_s] = simple_memo.try_emplace(by_size);
        if (fresh_s) si->second = oracle::count_simple(instance, labels, m);
        auto [di, fresh_d] = stub_memo.try_emplace(by_degree);
        if (fresh_d) di->second = oracle::count_stubs(instance, labels, m);

        auto matches = [](double ln_z, std::uint64_t count) {
          if (count == 0) return is_ln_zero(ln_z);
          return !is_ln_zero(ln_z) && std::llround(std::exp(ln_z)) == static_cast<long long>(count) &&
                 std::abs(ln_z - std::log(static_cast<double>(count))) < 1e-9;
        };
        if (!matches(multi.evaluate(state).value(), mi->second)) ++mismatches;
        if (!matches(simple.evaluate(state).value(), si->second)) ++mismatches;
        if (!matches(dc.evaluate(state).value(), di->second.distinct)) ++mismatches;
        if (di->second.raw != di->second.distinct * di->second.order_quotient) ++quotient_failures;
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = mismatches == 0 && quotient_failures == 0 && elapsed < 60.0;
  return {ok ? Verdict::Pass : Verdict::Fail,
          format("%llu compressions x 3 objectives, %llu mismatches, %llu stub-quotient failures, %.1f s",
                 static_cast<unsigned long long>(compressions),
                 static_cast<unsigned long long>(mismatches),
                 static_cast<unsigned long long>(quotient_failures), elapsed)};
}

// 2. Move deltas agree with two from-scratch evaluations.
Outcome delta_consistency() {
  std::mt19937_64 rng(2024);
  std::uint64_t checked = 0, failures = 0;
  double worst = 0.0;
  for (auto kind : {ObjectiveKind::SimpleHypergraph, ObjectiveKind::MultiHypergraph,
                    ObjectiveKind::DegreeCorrected, ObjectiveKind::RosvallBergstromGraph}) {
    const bool dyadic = kind == ObjectiveKind::RosvallBergstromGraph;
    for (Label m : {2u, 3u, 5u}) {
      for (int graph = 0; graph < 10; ++graph) {
        const auto h = random_hypergraph(rng, 50, 100, dyadic ? 2 : 1, dyadic ? 2 : 4);
        Clustering c{std::vector<Label>(50), m};
        for (auto& l : c.labels) l = rng() % m;
        CompressionState state(h, c);
        Objective objective(h, kind);
        for (int move = 0; move < 334; ++move) {
          const VertexId v = rng() % 50;
          const Label to = rng() % m;
          const LnZ before = objective.evaluate(state);
          const EntropyDelta d = objective.delta(state, v, to);
          const auto record = state.apply_move(v, to);
          const LnZ after = objective.evaluate(state);
          const double reference = after.finite - before.finite;
          const double error = std::abs(d.finite - reference);
          worst = std::max(worst, error);
          ++checked;
          if (d.zero_factors != after.zero_factors - before.zero_factors ||
              error > 1e-12 + 1e-9 * std::abs(reference)) {
            ++failures;
          }
          if (rng() % 2 == 0) state.undo(record);
        }
      }
    }
  }
  return {failures == 0 ? Verdict::Pass : Verdict::Fail,
          format("%llu moves over 4 objectives x m in {2,3,5}, %llu outside tolerance, max |error| %.2e",
                 static_cast<unsigned long long>(checked), static_cast<unsigned long long>(failures),
                 worst)};
}

// 3. A fixed-beta chain visits labelings with frequency proportional to Z^-beta.
Outcome stationarity() {
  const auto h = Hypergraph::build({{0, 1}, {1, 2, 3}, {0, 3}, {2, 3}, {1, 3}});
  std::string detail;
  bool ok = true;
  for (auto kind : {ObjectiveKind::MultiHypergraph, ObjectiveKind::DegreeCorrected}) {
    std::vector<double> target(16);
    double norm = 0.0;
    for (std::uint32_t code = 0; code < 16; ++code) {
      Clustering c{{code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 1}, 2};
      target[code] = std::exp(-ln_Z(CompressionState(h, c), kind));
      norm += target[code];
    }
    for (auto& p : target) p /= norm;

    const std::uint64_t burn_in = 10000;
    const std::uint64_t samples = 1000000;
    std::vector<double> visits(16, 0.0);
    ChainConfig config;
    config.num_labels = 2;
    config.steps = burn_in + samples;
    config.schedule = Schedule::constant(1.0);
    config.objective = kind;
    config.seed = 314159;
    config.observer = [&](std::uint64_t t, std::span<const Label> labels) {
      if (t >= burn_in) visits[labels[0] | labels[1] << 1 | labels[2] << 2 | labels[3] << 3] += 1.0;
    };
    run_chain(h, config);
    double tv = 0.0;
    for (std::uint32_t code = 0; code < 16; ++code) tv += std::abs(visits[code] / samples - target[code]);
    tv /= 2;
    ok = ok && tv <= 0.02;
    detail += format("%sTV(%s) = %.4f", detail.empty() ? "" : ", ", std::string(to_string(kind)).c_str(), tv);
  }
  return {ok ? Verdict::Pass : Verdict::Fail, detail + " (bound 0.02, 10^6 samples)"};
}

ChainConfig standard_chain(ObjectiveKind kind) {
  ChainConfig config;
  config.num_labels = 2;
  config.steps = 20000;
  config.schedule = Schedule::geometric_to(0.1, 10.0, 20000);
  config.objective = kind;
  return config;
}

double mean_planted_ari(double p2, double p3, Projection projection, ObjectiveKind kind) {
  double sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto planted = generate_planted({200, p2, p3, seed});
    Hypergraph input;
    switch (projection) {
      case Projection::None: input = planted.graph; break;
      case Projection::Simple: input = simple_projection(planted.graph); break;
      case Projection::Multi: input = multi_projection(planted.graph); break;
    }
    auto config = standard_chain(kind);
    config.seed = derive_seed(seed, 0x5eed);
    const auto run = run_restarts(input, config, 20);
    sum += adjusted_rand_index(planted.truth.labels, run.best_clustering.labels);
  }
  return sum / 5;
}

// 4. Planted partitions are recovered when assortative and not at balance.
Outcome synthetic_recovery() {
  const double strong = mean_planted_ari(0.95, 0.95, Projection::None, ObjectiveKind::DegreeCorrected);
  const double balanced = mean_planted_ari(0.5, 0.5, Projection::None, ObjectiveKind::DegreeCorrected);
  const bool ok = strong >= 0.9 && balanced <= 0.1;
  return {ok ? Verdict::Pass : Verdict::Fail,
          format("mean ARI %.4f at (0.95,0.95) [>= 0.9], %.4f at (0.5,0.5) [<= 0.1]", strong, balanced)};
}

// 5. Clique projections also recover a strongly assortative partition.
Outcome projection_parity() {
  const double simple = mean_planted_ari(0.95, 0.95, Projection::Simple, ObjectiveKind::DegreeCorrected);
  const double multi = mean_planted_ari(0.95, 0.95, Projection::Multi, ObjectiveKind::DegreeCorrected);
  const bool ok = simple >= 0.8 && multi >= 0.8;
  return {ok ? Verdict::Pass : Verdict::Fail,
          format("mean ARI simple projection %.4f, multi projection %.4f [both >= 0.8]", simple, multi)};
}

struct Dataset {
  LabeledHypergraph data;
  std::vector<std::uint32_t> truth;
};

Dataset load_dataset(const std::string& edges, const std::string& labels) {
  const AssignmentTable table = read_assignments(labels);
  Dataset d;
  d.data = read_edge_list(fs::path(edges), {.preset_labels = table.vertices});
  std::unordered_map<std::string, std::uint32_t> ids;
  for (const auto& c : table.clusters) {
    d.truth.push_back(ids.try_emplace(c, static_cast<std::uint32_t>(ids.size())).first->second);
  }
  return d;
}

double dataset_ari(const Dataset& d, Label m, ObjectiveKind kind) {
  auto config = standard_chain(kind);
  config.num_labels = m;
  const auto run = run_restarts(d.data.graph, config, 50);
  return adjusted_rand_index(d.truth, run.best_clustering.labels);
}

// 6. Contact-network datasets, when the user has fetched them.
Outcome datasets() {
  const char* ps_edges = std::getenv("HYPERCLUST_PRIMARY_SCHOOL_EDGES");
  const char* ps_labels = std::getenv("HYPERCLUST_PRIMARY_SCHOOL_LABELS");
  const char* hs_edges = std::getenv("HYPERCLUST_HIGH_SCHOOL_EDGES");
  const char* hs_labels = std::getenv("HYPERCLUST_HIGH_SCHOOL_LABELS");
  if (!(ps_edges && ps_labels) && !(hs_edges && hs_labels)) {
    return {Verdict::Skip, "dataset files not provided (set HYPERCLUST_{PRIMARY,HIGH}_SCHOOL_{EDGES,LABELS})"};
  }
  bool ok = true;
  std::string detail;
  if (ps_edges && ps_labels) {
    const double ari = dataset_ari(load_dataset(ps_edges, ps_labels), 11, ObjectiveKind::DegreeCorrected);
    ok = ok && ari >= 0.85;
    detail += format("primary school ARI %.4f [>= 0.85]", ari);
  }
  if (hs_edges && hs_labels) {
    const auto d = load_dataset(hs_edges, hs_labels);
    const double corrected = dataset_ari(d, 9, ObjectiveKind::DegreeCorrected);
    const double plain = dataset_ari(d, 9, ObjectiveKind::MultiHypergraph);
    ok = ok && corrected >= 0.90 && plain < corrected;
    detail += format("%shigh school ARI %.4f [>= 0.90], uncorrected %.4f [lower]",
                     detail.empty() ? "" : "; ", corrected, plain);
  }
  return {ok ? Verdict::Pass : Verdict::Fail, detail};
}

// 7. ARI examples.
Outcome ari_suite() {
  const std::vector<std::uint32_t> a{0, 0, 1, 1, 2, 2, 2};
  const double identity = adjusted_rand_index(a, a);
  const double hand = adjusted_rand_index(std::vector<std::uint32_t>{0, 0, 1, 1},
                                          std::vector<std::uint32_t>{0, 1, 0, 1});
  std::mt19937_64 rng(7);
  std::vector<std::uint32_t> x(10000), y(10000);
  for (auto& v : x) v = rng() % 4;
  for (auto& v : y) v = rng() % 4;
  const double independent = adjusted_rand_index(x, y);
  const bool ok = identity == 1.0 && std::abs(hand + 0.5) < 1e-12 && std::abs(independent) <= 0.05;
  return {ok ? Verdict::Pass : Verdict::Fail,
          format("identity %.6f, hand case %.6f, independent %.6f", identity, hand, independent)};
}

// 8. Description lengths add up and match the hand example.
Outcome mdl_conventions() {
  const double hand = partition_cost_bits(Hypergraph::build({{0, 1}, {2, 3}}), 2);
  const auto planted = generate_planted({50, 0.95, 0.95, 11});
  ChainConfig config = standard_chain(ObjectiveKind::DegreeCorrected);
  const auto report = mdl_sweep(planted.graph, 1, 4, config, 4);
  bool additive = report.records.size() == 4;
  for (const auto& r : report.records) additive = additive && r.total_bits == r.partition_bits + r.conditional_bits;
  const bool ok = hand == 7.0 && additive;
  return {ok ? Verdict::Pass : Verdict::Fail,
          format("hand example %.17g bits [7], additivity over %zu records %s, m* = %u", hand,
                 report.records.size(), additive ? "exact" : "broken", report.m_star)};
}

// 9. Chain speed and locality of move pricing.
Outcome performance() {
  const auto planted = generate_planted({200, 0.8, 0.8, 5});
  auto config = standard_chain(ObjectiveKind::DegreeCorrected);
  const auto start = Clock::now();
  run_chain(planted.graph, config);
  const double elapsed = seconds_since(start);

  // Work per delta, normalised by d_v, on a small and a 25x larger instance
  // of the same density.
  std::string detail = format("20000-step chain on %zu vertices / %zu edges: %.3f s [< 5 s]",
                              planted.graph.num_vertices(), planted.graph.num_edges(), elapsed);
  bool local = true;
  for (auto kind : {ObjectiveKind::DegreeCorrected, ObjectiveKind::MultiHypergraph,
                    ObjectiveKind::SimpleHypergraph}) {
    std::vector<double> per_degree;
    for (std::uint32_t n : {200u, 5000u}) {
      const auto g = generate_planted({n, 0.8, 0.8, 6}).graph;
      Clustering c{std::vector<Label>(g.num_vertices()), 2};
      std::mt19937_64 rng(8);
      for (auto& l : c.labels) l = rng() % 2;
      CompressionState state(g, c);
      Objective objective(g, kind);
      std::uint64_t degree_total = 0;
      bool bounded = true;
      for (int trial = 0; trial < 20000; ++trial) {
        const VertexId v = rng() % g.num_vertices();
        const auto before = objective.counters();
        objective.delta(state, v, 1 - state.label(v));
        const auto after = objective.counters();
        const std::uint64_t work = (after.incident_edges - before.incident_edges) +
                                   (after.entries_repriced - before.entries_repriced);
        // incident edges plus at most the 2 (DC) or 2 * (max size) (multi)
        // or the small number of types touching two clusters (simple)
        bounded = bounded && work <= 3 * std::uint64_t{g.degree(v)} + 2 * g.max_edge_size() + 16;
        degree_total += g.degree(v) + 1;
      }
      local = local && bounded;
      const auto& counters = objective.counters();
      per_degree.push_back(static_cast<double>(counters.incident_edges + counters.entries_repriced) /
                           static_cast<double>(degree_total));
    }
    const double growth = per_degree[1] / per_degree[0];
    local = local && growth < 1.5;
    detail += format("; %s work per (d_v+1): %.2f at n=400, %.2f at n=10000",
                     std::string(to_string(kind)).c_str(), per_degree[0], per_degree[1]);
  }
  const bool ok = elapsed < 5.0 && local;
  return {ok ? Verdict::Pass : Verdict::Fail, detail};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hyperclust");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (code != 0) std::fprintf(stderr, "%s", err.str().c_str());
  return code;
}

// 10. Re-running a manifest reproduces the assignments bit for bit.
Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "hyperclust_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string graph = (dir / "g.txt").string();
  bool ok = cli({"generate", "--n", "200", "--p2", "0.8", "--p3", "0.8", "--seed", "3", "--out", graph}) == 0;

  setenv("HYPERCLUST_THREADS", "4", 1);
  ok = ok && cli({"cluster", "--input", graph, "--clusters", "2", "--restarts", "8", "--seed", "77",
                  "--out-prefix", (dir / "first").string()}) == 0;
  ok = ok && cli({"cluster", "--manifest", (dir / "first.manifest.json").string(), "--out-prefix",
                  (dir / "second").string()}) == 0;
  setenv("HYPERCLUST_THREADS", "1", 1);
  ok = ok && cli({"cluster", "--manifest", (dir / "first.manifest.json").string(), "--out-prefix",
                  (dir / "serial").string()}) == 0;
  unsetenv("HYPERCLUST_THREADS");

  const std::string first = slurp(dir / "first.assignments.tsv");
  const bool same = ok && !first.empty() && first == slurp(dir / "second.assignments.tsv") &&
                    first == slurp(dir / "serial.assignments.tsv");
  fs::remove_all(dir);
  return {same ? Verdict::Pass : Verdict::Fail,
          same ? "manifest re-runs with 4 threads and 1 thread give identical assignment files"
               : "assignment files differ or a run failed"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"counting-oracle equivalence", counting_oracles},
      {"delta consistency", delta_consistency},
      {"stationary distribution", stationarity},
      {"synthetic recovery", synthetic_recovery},
      {"projection parity", projection_parity},
      {"empirical datasets", datasets},
      {"ARI unit suite", ari_suite},
      {"MDL additivity and conventions", mdl_conventions},
      {"performance envelope", performance},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t j = 0; j < criteria.size(); ++j) {
    Outcome outcome;
    const auto start = Clock::now();
    try {
      outcome = criteria[j].second();
    } catch (const std::exception& e) {
      outcome = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = outcome.verdict == Verdict::Pass ? "PASS" : outcome.verdict == Verdict::Skip ? "SKIP" : "FAIL";
    if (outcome.verdict == Verdict::Fail) ++failures;
    std::printf("[%s] %2zu %s: %s (%.1f s)\n", tag, j + 1, criteria[j].first, outcome.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
