#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hyperclust/hypergraph.hpp"

namespace hyperclust {

using Label = std::uint32_t;
using TypeId = std::uint32_t;

/// One nonzero coordinate of a lambda-type: `count` members of an edge carry
/// `label`.
struct LambdaEntry {
  Label label = 0;
  std::uint32_t count = 0;

  friend auto operator<=>(const LambdaEntry&, const LambdaEntry&) = default;
};

/// Sparse intersection profile of an edge with the clusters. Canonical form:
/// entries sorted by label, every count >= 1.
using LambdaType = std::vector<LambdaEntry>;

struct LambdaTypeHash {
  using is_transparent = void;
  std::size_t operator()(std::span<const LambdaEntry> key) const noexcept;
  std::size_t operator()(const LambdaType& key) const noexcept {
    return (*this)(std::span<const LambdaEntry>(key));
  }
};

struct LambdaTypeEqual {
  using is_transparent = void;
  bool operator()(std::span<const LambdaEntry> a, std::span<const LambdaEntry> b) const noexcept;
};

/// Intersection count of `key` at `label` (0 when absent).
std::uint32_t lambda_at(std::span<const LambdaEntry> key, Label label);

/// Writes into `out` the type obtained from `key` by moving `multiplicity`
/// members from label `from` to label `to`.
void shifted_type(std::span<const LambdaEntry> key, Label from, Label to,
                  std::uint32_t multiplicity, LambdaType& out);

/// Sum over entries of ln(count!).
double ln_lambda_factorials(std::span<const LambdaEntry> key);

/// Label vector c with a fixed label universe [0, num_labels).
struct Clustering {
  std::vector<Label> labels;
  Label num_labels = 1;

  /// Throws std::invalid_argument on m == 0 or an out-of-range label.
  void validate() const;

  friend bool operator==(const Clustering&, const Clustering&) = default;
};

/// Plain copy of every integer statistic, keyed canonically. Used to compare
/// states independent of internal type ids.
struct CompressionStatistics {
  std::vector<std::uint64_t> cluster_sizes;
  std::vector<std::uint64_t> cluster_degree_sums;
  std::map<LambdaType, std::uint64_t> lambda_counts;
  /// intersection_histograms[i][s] = number of edges A with |A & C_i| = s (s >= 1).
  std::vector<std::map<std::uint32_t, std::uint64_t>> intersection_histograms;
  std::vector<LambdaType> edge_types;

  friend bool operator==(const CompressionStatistics&, const CompressionStatistics&) = default;
};

struct MoveDelta {
  VertexId vertex = 0;
  Label from = 0;
  Label to = 0;
  std::uint64_t token = 0;
};

/// Sufficient statistics of the compression induced by a clustering of a
/// fixed hypergraph, kept current under single-vertex moves.
///
/// The hypergraph must outlive the state. Lambda-types are interned: every
/// distinct type present gets a TypeId, which is recycled once its count
/// drops to zero.
class CompressionState {
 public:
  CompressionState(const Hypergraph& graph, Clustering clustering);

  const Hypergraph& hypergraph() const { return *graph_; }
  const Clustering& clustering() const { return clustering_; }
  std::span<const Label> labels() const { return clustering_.labels; }
  Label label(VertexId v) const { return clustering_.labels[v]; }
  Label num_labels() const { return clustering_.num_labels; }

  std::uint64_t cluster_size(Label i) const { return sizes_[i]; }
  std::span<const std::uint64_t> cluster_sizes() const { return sizes_; }
  std::uint64_t cluster_degree_sum(Label i) const { return degree_sums_[i]; }
  std::span<const std::uint64_t> cluster_degree_sums() const { return degree_sums_; }

  /// Valid intersection sizes are [1, histogram_width()).
  std::size_t histogram_width() const { return width_; }
  std::uint64_t intersection_count(Label i, std::size_t s) const {
    return histograms_[std::size_t{i} * width_ + s];
  }

  TypeId edge_type(EdgeId e) const { return edge_types_[e]; }
  const LambdaType& type_key(TypeId t) const { return types_[t].key; }
  std::uint64_t type_count(TypeId t) const { return types_[t].count; }
  double type_ln_lambda_factorials(TypeId t) const { return types_[t].ln_lambda_factorials; }
  std::optional<TypeId> find_type(std::span<const LambdaEntry> key) const;
  /// Ids of present types with a nonzero entry at label i.
  std::span<const TypeId> types_with_label(Label i) const { return cluster_types_[i]; }
  std::size_t num_types() const { return type_index_.size(); }

  template <class Fn>
  void for_each_type(Fn&& fn) const {
    for (TypeId t = 0; t < types_.size(); ++t) {
      if (types_[t].count > 0) fn(t);
    }
  }

  /// Moves v to new_label and returns a record that undoes the move. Moving
  /// to the current label is a recorded no-op.
  MoveDelta apply_move(VertexId v, Label new_label);

  /// Reverts the most recent not-yet-undone move. Throws std::logic_error if
  /// `delta` is not that move.
  void undo(const MoveDelta& delta);

  CompressionStatistics statistics() const;

 private:
  struct TypeRecord {
    LambdaType key;
    std::uint64_t count = 0;
    // slots[j] = position of this id in cluster_types_[key[j].label].
    std::vector<std::uint32_t> slots;
    double ln_lambda_factorials = 0.0;
  };

  void relabel(VertexId v, Label from, Label to);
  std::uint64_t& histogram(Label i, std::size_t s) { return histograms_[std::size_t{i} * width_ + s]; }
  TypeId acquire(std::span<const LambdaEntry> key);
  void release(TypeId t);

  const Hypergraph* graph_;
  Clustering clustering_;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint64_t> degree_sums_;
  std::size_t width_ = 1;
  std::vector<std::uint64_t> histograms_;
  std::vector<TypeId> edge_types_;
  std::vector<TypeRecord> types_;
  std::vector<TypeId> free_types_;
  std::unordered_map<LambdaType, TypeId, LambdaTypeHash, LambdaTypeEqual> type_index_;
  std::vector<std::vector<TypeId>> cluster_types_;
  std::deque<std::uint64_t> undo_tokens_;
  std::uint64_t next_token_ = 0;
  LambdaType scratch_;
};

}  // namespace hyperclust
