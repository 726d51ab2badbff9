#pragma once

#include <cstdint>
#include <vector>

#include "hyperclust/annealing.hpp"

namespace hyperclust {

/// Two-part code length of a hypergraph under a compression, in bits.
struct DescriptionLength {
  /// n log m + sum_{k=2}^{k*} C(m+k-1, k) log l_k
  double partition_bits = 0.0;
  /// ln Z(gamma) / ln 2
  double conditional_bits = 0.0;

  double total_bits() const { return partition_bits + conditional_bits; }
};

/// Partition cost for n vertices, m labels and an edge-size histogram.
/// Edge sizes below 2 carry no term; sizes with l_k = 0 are skipped.
double partition_cost_bits(const Hypergraph& graph, Label m);

DescriptionLength description_length(const Hypergraph& graph, const CompressionState& state,
                                     ObjectiveKind kind);

struct MdlRecord {
  Label m = 1;
  double partition_bits = 0.0;
  double conditional_bits = 0.0;
  double total_bits = 0.0;
  Clustering best_clustering;
  double best_ln_z = 0.0;
};

struct MdlReport {
  std::vector<MdlRecord> records;
  Label m_star = 1;
};

/// Runs run_restarts for each m in [m_min, m_max] with `per_m` as template
/// (its num_labels is overwritten) and picks the m of least total length,
/// the smaller m on ties.
MdlReport mdl_sweep(const Hypergraph& graph, Label m_min, Label m_max, const ChainConfig& per_m,
                    std::uint32_t restarts, unsigned threads = 0);

}  // namespace hyperclust
