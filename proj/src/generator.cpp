#include "hyperclust/generator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hyperclust/evaluation.hpp"
#include "hyperclust/rng.hpp"

namespace hyperclust {

namespace {

bool is_proportion(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

std::string format_proportion(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", p);
  return buffer;
}

double grid_value(std::uint32_t j, std::uint32_t resolution) {
  return static_cast<double>(j) / static_cast<double>(resolution - 1);
}

}  // namespace

void PlantedConfig::validate() const {
  if (cluster_size < 3) throw std::invalid_argument("cluster size must be at least 3");
  if (!is_proportion(p2)) throw std::invalid_argument("p2 must lie in [0, 1]");
  if (!is_proportion(p3)) throw std::invalid_argument("p3 must lie in [0, 1]");
}

std::uint64_t planted_two_edge_count(std::uint32_t cluster_size) {
  return 5 * std::uint64_t{cluster_size};
}

std::uint64_t planted_three_edge_count(std::uint32_t cluster_size) {
  // round(10n / 3) with halves up, in integers: floor((20n + 3) / 6)
  return (20 * std::uint64_t{cluster_size} + 3) / 6;
}

PlantedHypergraph generate_planted(const PlantedConfig& config) {
  config.validate();
  const std::uint32_t n = config.cluster_size;
  Rng rng(config.seed);
  auto vertex_in = [&](std::uint32_t block) {
    return static_cast<VertexId>(block * n + rng.below(n));
  };
  // k distinct vertices of one block via rejection; k <= 3 <= n.
  auto distinct_in = [&](std::uint32_t block, std::size_t k, std::vector<VertexId>& out) {
    const std::size_t start = out.size();
    while (out.size() < start + k) {
      const VertexId v = vertex_in(block);
      bool fresh = true;
      for (std::size_t j = start; j < out.size(); ++j) fresh = fresh && out[j] != v;
      if (fresh) out.push_back(v);
    }
  };

  std::vector<std::vector<VertexId>> edges;
  const std::uint64_t two_edges = planted_two_edge_count(n);
  const std::uint64_t three_edges = planted_three_edge_count(n);
  edges.reserve(two_edges + three_edges);
  for (std::uint64_t j = 0; j < two_edges; ++j) {
    std::vector<VertexId> edge;
    if (rng.bernoulli(config.p2)) {
      distinct_in(static_cast<std::uint32_t>(rng.below(2)), 2, edge);
    } else {
      edge = {vertex_in(0), vertex_in(1)};
    }
    edges.push_back(std::move(edge));
  }
  for (std::uint64_t j = 0; j < three_edges; ++j) {
    std::vector<VertexId> edge;
    if (rng.bernoulli(config.p3)) {
      distinct_in(static_cast<std::uint32_t>(rng.below(2)), 3, edge);
    } else {
      const auto majority = static_cast<std::uint32_t>(rng.below(2));
      distinct_in(majority, 2, edge);
      edge.push_back(vertex_in(1 - majority));
    }
    edges.push_back(std::move(edge));
  }

  PlantedHypergraph result;
  result.graph = Hypergraph::build(std::move(edges), {.num_vertices = std::size_t{2} * n});
  result.truth.num_labels = 2;
  result.truth.labels.assign(std::size_t{2} * n, 0);
  std::fill(result.truth.labels.begin() + n, result.truth.labels.end(), 1);
  return result;
}

std::string_view to_string(Projection projection) {
  switch (projection) {
    case Projection::None: return "none";
    case Projection::Simple: return "simple";
    case Projection::Multi: return "multi";
  }
  return "unknown";
}

Projection parse_projection(std::string_view name) {
  if (name == "none") return Projection::None;
  if (name == "simple") return Projection::Simple;
  if (name == "multi") return Projection::Multi;
  throw std::invalid_argument("unknown projection '" + std::string(name) + "'");
}

std::uint64_t sweep_graph_seed(std::uint64_t base, std::uint32_t row, std::uint32_t column,
                               std::uint32_t graph) {
  const std::uint64_t cell = (std::uint64_t{row} << 40) ^ (std::uint64_t{column} << 20) ^ graph;
  return derive_seed(base, cell);
}

SweepCell evaluate_cell(const SweepConfig& config, std::uint32_t row, std::uint32_t column) {
  if (config.resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  if (config.graphs_per_cell == 0) throw std::invalid_argument("graphs per cell must be positive");
  SweepCell cell;
  cell.p2 = grid_value(row, config.resolution);
  cell.p3 = grid_value(column, config.resolution);
  cell.graphs = config.graphs_per_cell;
  cell.restarts = config.restarts;

  double sum = 0.0;
  for (std::uint32_t g = 0; g < config.graphs_per_cell; ++g) {
    const std::uint64_t seed = sweep_graph_seed(config.seed, row, column, g);
    PlantedHypergraph planted =
        generate_planted({config.cluster_size, cell.p2, cell.p3, seed});
    Hypergraph input;
    switch (config.projection) {
      case Projection::None: input = std::move(planted.graph); break;
      case Projection::Simple: input = simple_projection(planted.graph); break;
      case Projection::Multi: input = multi_projection(planted.graph); break;
    }
    ChainConfig chain = config.chain;
    chain.num_labels = 2;
    chain.initial.reset();
    chain.seed = derive_seed(seed, 0x5eed);
    const RunResult run = run_restarts(input, chain, config.restarts, config.threads);
    sum += adjusted_rand_index(planted.truth.labels, run.best_clustering.labels);
  }
  cell.mean_ari = sum / config.graphs_per_cell;
  return cell;
}

std::string format_heatmap_row(const SweepCell& cell) {
  char ari[32];
  std::snprintf(ari, sizeof ari, "%.6f", cell.mean_ari);
  return format_proportion(cell.p2) + "," + format_proportion(cell.p3) + "," + ari + "," +
         std::to_string(cell.graphs) + "," + std::to_string(cell.restarts);
}

std::vector<SweepCell> sweep_grid(const SweepConfig& config) {
  std::vector<SweepCell> cells;
  for (std::uint32_t row = 0; row < config.resolution; ++row) {
    for (std::uint32_t column = 0; column < config.resolution; ++column) {
      cells.push_back(evaluate_cell(config, row, column));
    }
  }
  return cells;
}

std::size_t sweep_grid(const SweepConfig& config, const std::filesystem::path& csv_path) {
  if (config.resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  std::set<std::string> done;
  bool has_header = false;
  if (std::ifstream in(csv_path); in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line == kHeatmapHeader) {
        has_header = true;
        continue;
      }
      if (!has_header) throw std::runtime_error(csv_path.string() + " is not a heatmap table");
      const auto first = line.find(',');
      const auto second = line.find(',', first + 1);
      if (first == std::string::npos || second == std::string::npos) {
        throw std::runtime_error("malformed heatmap row: " + line);
      }
      done.insert(line.substr(0, second));
    }
  }

  std::ofstream out(csv_path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open " + csv_path.string());
  if (!has_header) out << kHeatmapHeader << '\n';
  std::size_t ran = 0;
  for (std::uint32_t row = 0; row < config.resolution; ++row) {
    for (std::uint32_t column = 0; column < config.resolution; ++column) {
      const std::string key = format_proportion(grid_value(row, config.resolution)) + "," +
                              format_proportion(grid_value(column, config.resolution));
      if (done.count(key) > 0) continue;
      out << format_heatmap_row(evaluate_cell(config, row, column)) << '\n' << std::flush;
      ++ran;
    }
  }
  return ran;
}

}  // namespace hyperclust
