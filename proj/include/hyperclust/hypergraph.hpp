#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace hyperclust {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct BuildOptions {
  /// Permit a vertex to occur more than once inside one hyperedge. Each
  /// occurrence counts toward the vertex degree.
  bool allow_multi_inclusion = false;
  /// Vertex count; must be at least 1 + the largest id used. When unset the
  /// count is inferred from the edges.
  std::optional<std::size_t> num_vertices;
};

/// Immutable vertex/edge incidence structure.
///
/// Edges keep their members in input order. Per-vertex incidence lists hold
/// each incident edge once, with a parallel list of inclusion multiplicities
/// (always 1 unless multi-inclusion is enabled).
class Hypergraph {
 public:
  Hypergraph() = default;

  static Hypergraph build(std::vector<std::vector<VertexId>> edges,
                          const BuildOptions& options = {});

  std::size_t num_vertices() const { return degrees_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const VertexId> edge(EdgeId e) const { return edges_[e]; }
  const std::vector<std::vector<VertexId>>& edges() const { return edges_; }

  std::uint32_t degree(VertexId v) const { return degrees_[v]; }
  std::span<const std::uint32_t> degrees() const { return degrees_; }

  std::span<const EdgeId> incidence(VertexId v) const { return incident_edges_[v]; }
  /// multiplicities(v)[j] is how often v occurs in incidence(v)[j].
  std::span<const std::uint32_t> multiplicities(VertexId v) const {
    return inclusion_counts_[v];
  }

  std::size_t max_edge_size() const { return max_edge_size_; }
  std::uint64_t total_degree() const { return total_degree_; }
  bool allows_multi_inclusion() const { return multi_inclusion_; }
  bool is_dyadic() const;

 private:
  std::vector<std::vector<VertexId>> edges_;
  std::vector<std::uint32_t> degrees_;
  std::vector<std::vector<EdgeId>> incident_edges_;
  std::vector<std::vector<std::uint32_t>> inclusion_counts_;
  std::size_t max_edge_size_ = 0;
  std::uint64_t total_degree_ = 0;
  bool multi_inclusion_ = false;
};

/// Edge size k -> number of edges of that size.
std::map<std::size_t, std::size_t> edge_size_histogram(const Hypergraph& h);

}  // namespace hyperclust
