#include "hyperclust/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "hyperclust/annealing.hpp"
#include "hyperclust/evaluation.hpp"
#include "hyperclust/generator.hpp"
#include "hyperclust/io.hpp"
#include "hyperclust/model_selection.hpp"

namespace hyperclust {

namespace {

using json = nlohmann::json;

constexpr const char* kMdlCaveat =
    "note: minimum description length tends to underestimate the number of clusters; "
    "treat m* as a lower-side estimate.";

struct ScheduleFlags {
  std::string kind = "geometric";
  double beta0 = 0.1;
  double beta_final = 10.0;

  Schedule build(std::uint64_t steps) const {
    switch (parse_schedule_kind(kind)) {
      case Schedule::Kind::Constant: return Schedule::constant(beta0);
      case Schedule::Kind::Linear: return Schedule::linear(beta0, beta_final, steps);
      case Schedule::Kind::Geometric: break;
    }
    if (beta0 <= 0.0 || beta_final <= 0.0) {
      throw std::invalid_argument("geometric schedule needs positive beta0 and beta-final");
    }
    return Schedule::geometric_to(beta0, beta_final, steps);
  }
};

void add_schedule_flags(CLI::App* command, ScheduleFlags& flags, bool with_kind) {
  command->add_option("--beta0", flags.beta0, "Initial inverse temperature")->capture_default_str();
  command->add_option("--beta-final", flags.beta_final, "Final inverse temperature")
      ->capture_default_str();
  if (with_kind) {
    command->add_option("--schedule", flags.kind, "constant | geometric | linear")
        ->check(CLI::IsMember({"constant", "geometric", "linear"}))
        ->capture_default_str();
  }
}

std::string double_text(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

// --- cluster ---

struct ClusterFlags {
  std::string input;
  std::string vertices;
  std::string manifest;
  std::string out_prefix;
  std::string objective = "degree-corrected";
  Label clusters = 0;
  std::uint64_t steps = 20000;
  std::uint32_t restarts = 10;
  std::uint64_t seed = 1;
  std::uint64_t trace_interval = 0;
  bool dedupe = false;
  bool multi_inclusion = false;
  ScheduleFlags schedule;
};

void load_manifest(ClusterFlags& flags) {
  std::ifstream in(flags.manifest);
  if (!in) throw std::runtime_error("cannot open " + flags.manifest);
  const json manifest = json::parse(in);
  const auto& input = manifest.at("input");
  flags.input = input.at("path").get<std::string>();
  flags.vertices = input.value("vertices", std::string{});
  flags.dedupe = input.at("dedupe").get<bool>();
  flags.multi_inclusion = input.at("multi_inclusion").get<bool>();
  flags.objective = manifest.at("objective").get<std::string>();
  flags.clusters = manifest.at("clusters").get<Label>();
  flags.steps = manifest.at("steps").get<std::uint64_t>();
  flags.restarts = manifest.at("restarts").get<std::uint32_t>();
  flags.seed = manifest.at("seed").get<std::uint64_t>();
  flags.trace_interval = manifest.value("trace_interval", std::uint64_t{0});
  const auto& schedule = manifest.at("schedule");
  flags.schedule.kind = schedule.at("kind").get<std::string>();
  flags.schedule.beta0 = schedule.at("beta0").get<double>();
  flags.schedule.beta_final = schedule.at("beta_final").get<double>();
  if (file_digest(flags.input) != input.at("digest").get<std::string>()) {
    throw std::runtime_error("input " + flags.input + " does not match the manifest digest");
  }
}

LabeledHypergraph load_input(const std::string& path, const std::string& vertices, bool dedupe,
                             bool multi_inclusion) {
  ReadOptions options;
  options.dedupe = dedupe;
  options.allow_multi_inclusion = multi_inclusion;
  if (!vertices.empty()) options.preset_labels = read_assignments(vertices).vertices;
  return read_edge_list(std::filesystem::path(path), options);
}

int run_cluster(ClusterFlags flags, std::ostream& out) {
  if (!flags.manifest.empty()) load_manifest(flags);
  if (flags.input.empty()) throw std::invalid_argument("--input is required");
  if (flags.clusters == 0) throw std::invalid_argument("--clusters must be at least 1");
  if (flags.restarts == 0) throw std::invalid_argument("--restarts must be at least 1");

  const auto started = std::chrono::steady_clock::now();
  const LabeledHypergraph data =
      load_input(flags.input, flags.vertices, flags.dedupe, flags.multi_inclusion);

  ChainConfig config;
  config.num_labels = flags.clusters;
  config.steps = flags.steps;
  config.schedule = flags.schedule.build(flags.steps);
  config.seed = flags.seed;
  config.objective = parse_objective(flags.objective);
  config.trace_interval = flags.trace_interval;
  config.validate(data.graph);

  const RunResult result = run_restarts(data.graph, config, flags.restarts);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  std::ostringstream assignments;
  write_assignments(assignments, data.labels, result.best_clustering.labels);

  json manifest;
  manifest["version"] = kVersion;
  manifest["command"] = "cluster";
  manifest["input"] = {{"path", flags.input},
                       {"digest", file_digest(flags.input)},
                       {"dedupe", flags.dedupe},
                       {"multi_inclusion", flags.multi_inclusion},
                       {"vertices", flags.vertices}};
  manifest["objective"] = std::string(to_string(config.objective));
  manifest["clusters"] = flags.clusters;
  manifest["steps"] = flags.steps;
  manifest["restarts"] = flags.restarts;
  manifest["seed"] = flags.seed;
  manifest["trace_interval"] = flags.trace_interval;
  manifest["schedule"] = {{"kind", std::string(to_string(config.schedule.kind))},
                          {"beta0", flags.schedule.beta0},
                          {"beta_final", flags.schedule.beta_final},
                          {"rate", config.schedule.rate}};
  manifest["threads_env"] = "HYPERCLUST_THREADS";
  manifest["result"] = {{"best_entropy_nats", result.best_ln_z},
                        {"best_entropy_bits", result.best_ln_z / std::numbers::ln2},
                        {"compatible", !is_ln_zero(result.best_ln_z)},
                        {"winning_restart", result.restart},
                        {"winning_seed", result.seed},
                        {"accepted_moves", result.accepted}};
  manifest["wall_time_seconds"] = seconds;
  manifest["vertex_labels"] = data.labels;

  std::ostringstream trace;
  if (flags.trace_interval > 0) {
    trace << "step,current_ln_z,best_ln_z\n";
    for (const auto& point : result.trace) {
      trace << point.step << ',' << double_text(point.current_ln_z) << ','
            << double_text(point.best_ln_z) << '\n';
    }
  }

  write_file_atomically(flags.out_prefix + ".assignments.tsv", assignments.str());
  write_file_atomically(flags.out_prefix + ".manifest.json", manifest.dump(2) + "\n");
  if (flags.trace_interval > 0) write_file_atomically(flags.out_prefix + ".trace.csv", trace.str());

  out << "vertices: " << data.graph.num_vertices() << ", edges: " << data.graph.num_edges()
      << "\nbest entropy: " << double_text(result.best_ln_z) << " nats ("
      << double_text(result.best_ln_z / std::numbers::ln2) << " bits), restart "
      << result.restart << "\n";
  return 0;
}

// --- generate ---

struct GenerateFlags {
  std::uint32_t n = 200;
  double p2 = 0.5;
  double p3 = 0.5;
  std::uint64_t seed = 1;
  std::string out;
};

int run_generate(const GenerateFlags& flags, std::ostream& out) {
  const PlantedHypergraph planted = generate_planted({flags.n, flags.p2, flags.p3, flags.seed});
  const auto labels = index_labels(planted.graph.num_vertices());
  std::ostringstream edges;
  write_edge_list(edges, planted.graph, labels);
  std::ostringstream truth;
  write_assignments(truth, labels, planted.truth.labels);
  write_file_atomically(flags.out, edges.str());
  write_file_atomically(flags.out + ".truth.tsv", truth.str());
  out << "wrote " << planted.graph.num_edges() << " edges over "
      << planted.graph.num_vertices() << " vertices\n";
  return 0;
}

// --- sweep ---

struct SweepFlags {
  std::uint32_t n = 200;
  std::uint32_t resolution = 51;
  std::uint32_t graphs_per_cell = 5;
  std::uint32_t restarts = 20;
  std::uint64_t steps = 20000;
  std::uint64_t seed = 1;
  std::string objective = "degree-corrected";
  std::string projection = "none";
  std::string out;
  ScheduleFlags schedule;
};

int run_sweep(const SweepFlags& flags, std::ostream& out) {
  SweepConfig config;
  config.cluster_size = flags.n;
  config.resolution = flags.resolution;
  config.graphs_per_cell = flags.graphs_per_cell;
  config.restarts = flags.restarts;
  config.seed = flags.seed;
  config.projection = parse_projection(flags.projection);
  config.chain.steps = flags.steps;
  config.chain.schedule = flags.schedule.build(flags.steps);
  config.chain.objective = parse_objective(flags.objective);
  if (config.resolution < 2) throw std::invalid_argument("--resolution must be at least 2");
  if (config.restarts == 0) throw std::invalid_argument("--restarts must be at least 1");
  PlantedConfig{flags.n, 0.0, 0.0, 0}.validate();
  const std::size_t ran = sweep_grid(config, std::filesystem::path(flags.out));
  out << "evaluated " << ran << " cells\n";
  return 0;
}

// --- mdl ---

struct MdlFlags {
  std::string input;
  Label m_min = 1;
  Label m_max = 8;
  std::uint64_t steps = 20000;
  std::uint32_t restarts = 10;
  std::uint64_t seed = 1;
  std::string objective = "degree-corrected";
  std::string out;
  bool dedupe = false;
  ScheduleFlags schedule;
};

int run_mdl(const MdlFlags& flags, std::ostream& out) {
  if (flags.m_min == 0 || flags.m_max < flags.m_min) {
    throw std::invalid_argument("need 1 <= --m-min <= --m-max");
  }
  if (flags.restarts == 0) throw std::invalid_argument("--restarts must be at least 1");
  const LabeledHypergraph data = load_input(flags.input, "", flags.dedupe, false);
  ChainConfig config;
  config.steps = flags.steps;
  config.schedule = flags.schedule.build(flags.steps);
  config.seed = flags.seed;
  config.objective = parse_objective(flags.objective);
  validate_objective(data.graph, config.objective);

  const MdlReport report = mdl_sweep(data.graph, flags.m_min, flags.m_max, config, flags.restarts);
  std::ostringstream csv;
  csv << "m,partition_bits,conditional_bits,total_bits\n";
  for (const auto& record : report.records) {
    csv << record.m << ',' << double_text(record.partition_bits) << ','
        << double_text(record.conditional_bits) << ',' << double_text(record.total_bits) << '\n';
  }
  write_file_atomically(flags.out, csv.str());
  out << "m* = " << report.m_star << "\n" << kMdlCaveat << "\n";
  return 0;
}

// --- project ---

struct ProjectFlags {
  std::string input;
  std::string mode = "simple";
  std::string out;
};

int run_project(const ProjectFlags& flags, std::ostream& out) {
  const LabeledHypergraph data = load_input(flags.input, "", false, false);
  const Hypergraph projected = flags.mode == "multi" ? multi_projection(data.graph)
                                                     : simple_projection(data.graph);
  std::ostringstream edges;
  write_edge_list(edges, projected, data.labels);
  write_file_atomically(flags.out, edges.str());
  out << "wrote " << projected.num_edges() << " edges\n";
  return 0;
}

// --- score ---

struct ScoreFlags {
  std::string truth;
  std::string predicted;
};

int run_score(const ScoreFlags& flags, std::ostream& out) {
  const AssignmentTable truth = read_assignments(flags.truth);
  const AssignmentTable predicted = read_assignments(flags.predicted);
  if (truth.vertices.size() != predicted.vertices.size()) {
    throw std::invalid_argument("truth has " + std::to_string(truth.vertices.size()) +
                                " vertices but prediction has " +
                                std::to_string(predicted.vertices.size()));
  }
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t j = 0; j < predicted.vertices.size(); ++j) position[predicted.vertices[j]] = j;

  auto interner = [](std::vector<std::string>& names) {
    return [&names, ids = std::unordered_map<std::string, std::uint32_t>{}](
               const std::string& name) mutable {
      auto [it, fresh] = ids.try_emplace(name, static_cast<std::uint32_t>(ids.size()));
      if (fresh) names.push_back(name);
      return it->second;
    };
  };
  std::vector<std::string> truth_names;
  std::vector<std::string> predicted_names;
  auto truth_id = interner(truth_names);
  auto predicted_id = interner(predicted_names);
  std::vector<std::uint32_t> a;
  std::vector<std::uint32_t> b;
  for (std::size_t j = 0; j < truth.vertices.size(); ++j) {
    const auto it = position.find(truth.vertices[j]);
    if (it == position.end()) {
      throw std::invalid_argument("vertex '" + truth.vertices[j] + "' missing from prediction");
    }
    a.push_back(truth_id(truth.clusters[j]));
    b.push_back(predicted_id(predicted.clusters[it->second]));
  }

  const ContingencyTable table = ContingencyTable::build(a, b);
  out << "ARI: " << std::setprecision(10) << adjusted_rand_index(a, b) << "\n";
  out << "truth\\predicted";
  for (const auto& name : predicted_names) out << ',' << name;
  out << '\n';
  for (std::size_t row = 0; row < table.counts.size(); ++row) {
    out << truth_names[row];
    for (std::uint64_t cell : table.counts[row]) out << ',' << cell;
    out << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypergraph clustering by minimum-entropy compression", "hyperclust"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ClusterFlags cluster;
  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster a hypergraph edge list");
  cluster_cmd->add_option("--input", cluster.input, "Edge list file");
  cluster_cmd->add_option("--clusters", cluster.clusters, "Number of cluster labels m");
  cluster_cmd->add_option("--steps", cluster.steps, "Proposals per chain")->capture_default_str();
  cluster_cmd->add_option("--objective", cluster.objective, "simple | multi | degree-corrected | rb-graph")
      ->check(CLI::IsMember({"simple", "multi", "degree-corrected", "rb-graph"}))
      ->capture_default_str();
  cluster_cmd->add_option("--restarts", cluster.restarts, "Independent chains")->capture_default_str();
  cluster_cmd->add_option("--seed", cluster.seed, "Base RNG seed")->capture_default_str();
  add_schedule_flags(cluster_cmd, cluster.schedule, true);
  cluster_cmd->add_option("--out-prefix", cluster.out_prefix, "Prefix of output files")->required();
  cluster_cmd->add_option("--trace-interval", cluster.trace_interval,
                          "Write <prefix>.trace.csv sampled every N steps (0: off)");
  cluster_cmd->add_flag("--dedupe", cluster.dedupe, "Drop repeated edge lines");
  cluster_cmd->add_flag("--multi-inclusion", cluster.multi_inclusion,
                        "Allow a vertex to repeat within an edge");
  cluster_cmd->add_option("--vertices", cluster.vertices,
                          "TSV whose first column lists all vertex names (keeps isolated vertices)");
  cluster_cmd->add_option("--manifest", cluster.manifest,
                          "Re-run with the settings recorded in a manifest");

  GenerateFlags generate;
  auto* generate_cmd = app.add_subcommand("generate", "Sample a two-block planted hypergraph");
  generate_cmd->add_option("--n", generate.n, "Vertices per block")->capture_default_str();
  generate_cmd->add_option("--p2", generate.p2, "Within-block fraction of 2-edges")->required();
  generate_cmd->add_option("--p3", generate.p3, "Within-block fraction of 3-edges")->required();
  generate_cmd->add_option("--seed", generate.seed)->capture_default_str();
  generate_cmd->add_option("--out", generate.out, "Edge list path")->required();

  SweepFlags sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "ARI heatmap over (p2, p3)");
  sweep_cmd->add_option("--n", sweep.n, "Vertices per block")->capture_default_str();
  sweep_cmd->add_option("--resolution", sweep.resolution)->capture_default_str();
  sweep_cmd->add_option("--graphs-per-cell", sweep.graphs_per_cell)->capture_default_str();
  sweep_cmd->add_option("--restarts", sweep.restarts)->capture_default_str();
  sweep_cmd->add_option("--steps", sweep.steps)->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed)->capture_default_str();
  sweep_cmd->add_option("--objective", sweep.objective)
      ->check(CLI::IsMember({"simple", "multi", "degree-corrected"}))
      ->capture_default_str();
  sweep_cmd->add_option("--projection", sweep.projection, "none | simple | multi")
      ->check(CLI::IsMember({"none", "simple", "multi"}))
      ->capture_default_str();
  add_schedule_flags(sweep_cmd, sweep.schedule, true);
  sweep_cmd->add_option("--out", sweep.out, "Heatmap CSV (resumed if present)")->required();

  MdlFlags mdl;
  auto* mdl_cmd = app.add_subcommand("mdl", "Description length over a range of m");
  mdl_cmd->add_option("--input", mdl.input)->required();
  mdl_cmd->add_option("--m-min", mdl.m_min)->capture_default_str();
  mdl_cmd->add_option("--m-max", mdl.m_max)->capture_default_str();
  mdl_cmd->add_option("--steps", mdl.steps)->capture_default_str();
  mdl_cmd->add_option("--restarts", mdl.restarts)->capture_default_str();
  mdl_cmd->add_option("--seed", mdl.seed)->capture_default_str();
  mdl_cmd->add_option("--objective", mdl.objective)
      ->check(CLI::IsMember({"simple", "multi", "degree-corrected", "rb-graph"}))
      ->capture_default_str();
  mdl_cmd->add_flag("--dedupe", mdl.dedupe);
  add_schedule_flags(mdl_cmd, mdl.schedule, true);
  mdl_cmd->add_option("--out", mdl.out, "CSV path")->required();

  ProjectFlags project;
  auto* project_cmd = app.add_subcommand("project", "Clique projection of a hypergraph");
  project_cmd->add_option("--input", project.input)->required();
  project_cmd->add_option("--mode", project.mode, "simple | multi")
      ->check(CLI::IsMember({"simple", "multi"}))
      ->capture_default_str();
  project_cmd->add_option("--out", project.out)->required();

  ScoreFlags score;
  auto* score_cmd = app.add_subcommand("score", "ARI and contingency table of two assignments");
  score_cmd->add_option("--truth", score.truth)->required();
  score_cmd->add_option("--predicted", score.predicted)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (cluster_cmd->parsed()) return run_cluster(cluster, out);
    if (generate_cmd->parsed()) return run_generate(generate, out);
    if (sweep_cmd->parsed()) return run_sweep(sweep, out);
    if (mdl_cmd->parsed()) return run_mdl(mdl, out);
    if (project_cmd->parsed()) return run_project(project, out);
    if (score_cmd->parsed()) return run_score(score, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace hyperclust
