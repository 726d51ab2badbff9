#include "hyperclust/model_selection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyperclust/combinatorics.hpp"

namespace hyperclust {

namespace {

double binomial_as_real(std::uint64_t n, std::uint64_t k) {
  std::uint64_t exact = 0;
  if (exact_binomial(n, k, exact)) return static_cast<double>(exact);
  return std::exp(ln_binomial(n, k));
}

}  // namespace

double partition_cost_bits(const Hypergraph& graph, Label m) {
  if (m == 0) throw std::invalid_argument("cluster count must be at least 1");
  double nats = static_cast<double>(graph.num_vertices()) * std::log(static_cast<double>(m));
  for (const auto& [k, count] : edge_size_histogram(graph)) {
    if (k < 2 || count == 0) continue;
    nats += binomial_as_real(std::uint64_t{m} + k - 1, k) * std::log(static_cast<double>(count));
  }
  return nats / std::numbers::ln2;
}

DescriptionLength description_length(const Hypergraph& graph, const CompressionState& state,
                                     ObjectiveKind kind) {
  DescriptionLength result;
  result.partition_bits = partition_cost_bits(graph, state.num_labels());
  result.conditional_bits = ln_Z(state, kind) / std::numbers::ln2;
  return result;
}

MdlReport mdl_sweep(const Hypergraph& graph, Label m_min, Label m_max, const ChainConfig& per_m,
                    std::uint32_t restarts, unsigned threads) {
  if (m_min == 0 || m_max < m_min) throw std::invalid_argument("invalid cluster-count range");
  MdlReport report;
  for (Label m = m_min; m <= m_max; ++m) {
    ChainConfig config = per_m;
    config.num_labels = m;
    config.initial.reset();
    RunResult run = run_restarts(graph, config, restarts, threads);
    CompressionState state(graph, run.best_clustering);
    const DescriptionLength length = description_length(graph, state, config.objective);

    MdlRecord record;
    record.m = m;
    record.partition_bits = length.partition_bits;
    record.conditional_bits = length.conditional_bits;
    record.total_bits = record.partition_bits + record.conditional_bits;
    record.best_clustering = std::move(run.best_clustering);
    record.best_ln_z = run.best_ln_z;
    report.records.push_back(std::move(record));
  }
  std::size_t best = 0;
  for (std::size_t j = 1; j < report.records.size(); ++j) {
    // An incompatible best clustering (total -inf) never wins.
    if (better_ln_z(report.records[j].total_bits, report.records[best].total_bits)) best = j;
  }
  report.m_star = report.records[best].m;
  return report;
}

}  // namespace hyperclust
