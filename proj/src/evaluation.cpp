#include "hyperclust/evaluation.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace hyperclust {

namespace {

double pairs(std::uint64_t k) { return static_cast<double>(k) * static_cast<double>(k - (k > 0)) / 2.0; }

std::vector<std::uint32_t> compact(std::span<const std::uint32_t> labels, std::size_t& count) {
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  std::vector<std::uint32_t> out;
  out.reserve(labels.size());
  for (std::uint32_t label : labels) {
    out.push_back(ids.try_emplace(label, static_cast<std::uint32_t>(ids.size())).first->second);
  }
  count = ids.size();
  return out;
}

std::vector<VertexId> distinct_members(std::span<const VertexId> edge) {
  std::vector<VertexId> members;
  members.reserve(edge.size());
  for (VertexId v : edge) {
    if (std::find(members.begin(), members.end(), v) == members.end()) members.push_back(v);
  }
  return members;
}

}  // namespace

ContingencyTable ContingencyTable::build(std::span<const std::uint32_t> truth,
                                         std::span<const std::uint32_t> predicted) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("partitions have different lengths");
  }
  std::size_t rows = 0;
  std::size_t columns = 0;
  const auto a = compact(truth, rows);
  const auto b = compact(predicted, columns);
  ContingencyTable table;
  table.counts.assign(rows, std::vector<std::uint64_t>(columns, 0));
  table.row_sums.assign(rows, 0);
  table.column_sums.assign(columns, 0);
  table.total = truth.size();
  for (std::size_t j = 0; j < a.size(); ++j) {
    ++table.counts[a[j]][b[j]];
    ++table.row_sums[a[j]];
    ++table.column_sums[b[j]];
  }
  return table;
}

double adjusted_rand_index(std::span<const std::uint32_t> truth,
                           std::span<const std::uint32_t> predicted) {
  const ContingencyTable table = ContingencyTable::build(truth, predicted);
  double index = 0.0;
  std::size_t nonzero_cells = 0;
  for (const auto& row : table.counts) {
    for (std::uint64_t cell : row) {
      index += pairs(cell);
      nonzero_cells += cell > 0;
    }
  }
  double row_pairs = 0.0;
  for (std::uint64_t sum : table.row_sums) row_pairs += pairs(sum);
  double column_pairs = 0.0;
  for (std::uint64_t sum : table.column_sums) column_pairs += pairs(sum);

  const double total_pairs = pairs(table.total);
  const double expected = total_pairs > 0.0 ? row_pairs * column_pairs / total_pairs : 0.0;
  const double maximum = 0.5 * (row_pairs + column_pairs);
  const double denominator = maximum - expected;
  if (denominator == 0.0) {
    // Identical up to relabeling iff each row and each column holds exactly
    // one nonzero cell.
    const bool same = nonzero_cells == table.row_sums.size() &&
                      nonzero_cells == table.column_sums.size();
    return same ? 1.0 : 0.0;
  }
  return (index - expected) / denominator;
}

Hypergraph simple_projection(const Hypergraph& graph) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::vector<VertexId>> edges;
  for (const auto& edge : graph.edges()) {
    const auto members = distinct_members(edge);
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const VertexId u = std::min(members[x], members[y]);
        const VertexId w = std::max(members[x], members[y]);
        if (seen.insert((std::uint64_t{u} << 32) | w).second) edges.push_back({u, w});
      }
    }
  }
  return Hypergraph::build(std::move(edges), {.num_vertices = graph.num_vertices()});
}

Hypergraph multi_projection(const Hypergraph& graph) {
  std::vector<std::vector<VertexId>> edges;
  for (const auto& edge : graph.edges()) {
    const auto members = distinct_members(edge);
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        edges.push_back({std::min(members[x], members[y]), std::max(members[x], members[y])});
      }
    }
  }
  return Hypergraph::build(std::move(edges), {.num_vertices = graph.num_vertices()});
}

}  // namespace hyperclust
