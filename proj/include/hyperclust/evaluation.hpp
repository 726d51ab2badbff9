#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperclust/hypergraph.hpp"

namespace hyperclust {

/// counts[a][b] = number of items with truth label a and predicted label b.
/// Labels are compacted to 0.. in first-appearance order.
struct ContingencyTable {
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<std::uint64_t> row_sums;
  std::vector<std::uint64_t> column_sums;
  std::uint64_t total = 0;

  static ContingencyTable build(std::span<const std::uint32_t> truth,
                                std::span<const std::uint32_t> predicted);
};

/// Adjusted Rand index. When the expected and maximal index coincide it is 1
/// for partitions equal up to relabeling and 0 otherwise. Throws
/// std::invalid_argument on a length mismatch.
double adjusted_rand_index(std::span<const std::uint32_t> truth,
                           std::span<const std::uint32_t> predicted);

/// All 2-subsets of every edge, each distinct pair once, in first-appearance
/// order. Repeated members of a multi-inclusion edge are treated as one.
Hypergraph simple_projection(const Hypergraph& graph);

/// All 2-subsets of every edge with multiplicity: a pair sharing k edges
/// appears k times.
Hypergraph multi_projection(const Hypergraph& graph);

}  // namespace hyperclust
