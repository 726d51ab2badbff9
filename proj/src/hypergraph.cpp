#include "hyperclust/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hyperclust {

Hypergraph Hypergraph::build(std::vector<std::vector<VertexId>> edges,
                             const BuildOptions& options) {
  Hypergraph h;
  h.multi_inclusion_ = options.allow_multi_inclusion;

  std::size_t inferred = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].empty()) {
      throw std::invalid_argument("edge " + std::to_string(e) + " is empty");
    }
    for (VertexId v : edges[e]) inferred = std::max<std::size_t>(inferred, std::size_t{v} + 1);
  }
  std::size_t n = inferred;
  if (options.num_vertices) {
    if (*options.num_vertices < inferred) {
      throw std::invalid_argument("vertex count " + std::to_string(*options.num_vertices) +
                                  " is smaller than 1 + largest vertex id (" +
                                  std::to_string(inferred) + ")");
    }
    n = *options.num_vertices;
  }
  if (edges.size() > std::size_t{UINT32_MAX}) throw std::invalid_argument("too many edges");

  h.degrees_.assign(n, 0);
  h.incident_edges_.assign(n, {});
  h.inclusion_counts_.assign(n, {});

  std::vector<VertexId> sorted;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& members = edges[e];
    h.max_edge_size_ = std::max(h.max_edge_size_, members.size());
    h.total_degree_ += members.size();

    sorted.assign(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 0; j < sorted.size();) {
      std::size_t run = j + 1;
      while (run < sorted.size() && sorted[run] == sorted[j]) ++run;
      const auto count = static_cast<std::uint32_t>(run - j);
      if (count > 1 && !options.allow_multi_inclusion) {
        throw std::invalid_argument("vertex " + std::to_string(sorted[j]) +
                                    " occurs more than once in edge " + std::to_string(e));
      }
      const VertexId v = sorted[j];
      h.degrees_[v] += count;
      h.incident_edges_[v].push_back(static_cast<EdgeId>(e));
      h.inclusion_counts_[v].push_back(count);
      j = run;
    }
  }
  h.edges_ = std::move(edges);
  return h;
}

bool Hypergraph::is_dyadic() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const auto& edge) { return edge.size() == 2; });
}

std::map<std::size_t, std::size_t> edge_size_histogram(const Hypergraph& h) {
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& edge : h.edges()) ++histogram[edge.size()];
  return histogram;
}

}  // namespace hyperclust
