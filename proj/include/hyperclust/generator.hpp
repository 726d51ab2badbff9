#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hyperclust/annealing.hpp"

namespace hyperclust {

/// Two equal planted communities; vertices [0, n) form block 0, [n, 2n) block 1.
struct PlantedConfig {
  std::uint32_t cluster_size = 200;
  /// Fraction of 2-edges drawn entirely inside one block.
  double p2 = 0.5;
  /// Fraction of 3-edges drawn entirely inside one block.
  double p3 = 0.5;
  std::uint64_t seed = 1;

  void validate() const;
};

struct PlantedHypergraph {
  Hypergraph graph;
  Clustering truth;
};

/// 5n two-edges followed by round(10n/3) three-edges (halves rounded up).
std::uint64_t planted_two_edge_count(std::uint32_t cluster_size);
std::uint64_t planted_three_edge_count(std::uint32_t cluster_size);

/// Linear-time sampler. Each edge independently lies inside a uniformly
/// chosen block with probability p2 (resp. p3); otherwise a 2-edge takes one
/// vertex per block and a 3-edge takes two vertices from a uniformly chosen
/// block and one from the other. Duplicate edges can occur.
PlantedHypergraph generate_planted(const PlantedConfig& config);

enum class Projection { None, Simple, Multi };

std::string_view to_string(Projection projection);
Projection parse_projection(std::string_view name);

struct SweepConfig {
  std::uint32_t cluster_size = 200;
  /// Grid points per axis; proportions are j / (resolution - 1).
  std::uint32_t resolution = 51;
  std::uint32_t graphs_per_cell = 5;
  std::uint32_t restarts = 20;
  /// num_labels is forced to 2.
  ChainConfig chain;
  Projection projection = Projection::None;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct SweepCell {
  double p2 = 0.0;
  double p3 = 0.0;
  double mean_ari = 0.0;
  std::uint32_t graphs = 0;
  std::uint32_t restarts = 0;
};

/// Seed of hypergraph g in grid cell (row, column).
std::uint64_t sweep_graph_seed(std::uint64_t base, std::uint32_t row, std::uint32_t column,
                               std::uint32_t graph);

/// Mean ARI of the lowest-entropy restart against the planted partition,
/// averaged over graphs_per_cell hypergraphs.
SweepCell evaluate_cell(const SweepConfig& config, std::uint32_t row, std::uint32_t column);

/// Header plus one row per cell, p2-major.
inline constexpr const char* kHeatmapHeader = "p2,p3,mean_ari,n_graphs,n_restarts";

std::string format_heatmap_row(const SweepCell& cell);

/// Evaluates every cell not already present in `csv_path` and appends it.
/// Rows are keyed by their (p2, p3) text. Returns the number of cells run.
std::size_t sweep_grid(const SweepConfig& config, const std::filesystem::path& csv_path);

/// In-memory variant returning all cells, p2-major.
std::vector<SweepCell> sweep_grid(const SweepConfig& config);

}  // namespace hyperclust
