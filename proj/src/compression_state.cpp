#include "hyperclust/compression_state.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hyperclust/combinatorics.hpp"

namespace hyperclust {

namespace {

constexpr std::size_t kUndoDepth = 4096;

}  // namespace

std::size_t LambdaTypeHash::operator()(std::span<const LambdaEntry> key) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& entry : key) {
    h ^= (std::uint64_t{entry.label} << 32) | entry.count;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

bool LambdaTypeEqual::operator()(std::span<const LambdaEntry> a,
                                 std::span<const LambdaEntry> b) const noexcept {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::uint32_t lambda_at(std::span<const LambdaEntry> key, Label label) {
  for (const auto& entry : key) {
    if (entry.label == label) return entry.count;
    if (entry.label > label) break;
  }
  return 0;
}

void shifted_type(std::span<const LambdaEntry> key, Label from, Label to,
                  std::uint32_t multiplicity, LambdaType& out) {
  out.clear();
  bool placed = false;
  for (const auto& entry : key) {
    LambdaEntry current = entry;
    if (current.label == from) {
      current.count -= multiplicity;
      if (current.count == 0) continue;
    }
    if (!placed && current.label >= to) {
      if (current.label == to) {
        current.count += multiplicity;
      } else {
        out.push_back({to, multiplicity});
      }
      placed = true;
    }
    out.push_back(current);
  }
  if (!placed) out.push_back({to, multiplicity});
}

double ln_lambda_factorials(std::span<const LambdaEntry> key) {
  double sum = 0.0;
  for (const auto& entry : key) sum += ln_factorial(entry.count);
  return sum;
}

void Clustering::validate() const {
  if (num_labels == 0) throw std::invalid_argument("cluster count must be at least 1");
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] >= num_labels) {
      throw std::invalid_argument("label " + std::to_string(labels[v]) + " of vertex " +
                                  std::to_string(v) + " is outside [0, " +
                                  std::to_string(num_labels) + ")");
    }
  }
}

CompressionState::CompressionState(const Hypergraph& graph, Clustering clustering)
    : graph_(&graph), clustering_(std::move(clustering)) {
  clustering_.validate();
  if (clustering_.labels.size() != graph.num_vertices()) {
    throw std::invalid_argument("clustering has " + std::to_string(clustering_.labels.size()) +
                                " labels for " + std::to_string(graph.num_vertices()) +
                                " vertices");
  }
  const Label m = clustering_.num_labels;
  sizes_.assign(m, 0);
  degree_sums_.assign(m, 0);
  width_ = graph.max_edge_size() + 1;
  histograms_.assign(std::size_t{m} * width_, 0);
  cluster_types_.assign(m, {});

  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    ++sizes_[clustering_.labels[v]];
    degree_sums_[clustering_.labels[v]] += graph.degree(v);
  }

  edge_types_.resize(graph.num_edges());
  std::vector<std::uint32_t> counts(m, 0);
  std::vector<Label> touched;
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    touched.clear();
    for (VertexId v : graph.edge(e)) {
      const Label i = clustering_.labels[v];
      if (counts[i]++ == 0) touched.push_back(i);
    }
    std::sort(touched.begin(), touched.end());
    scratch_.clear();
    for (Label i : touched) {
      scratch_.push_back({i, counts[i]});
      ++histogram(i, counts[i]);
      counts[i] = 0;
    }
    edge_types_[e] = acquire(scratch_);
  }
}

std::optional<TypeId> CompressionState::find_type(std::span<const LambdaEntry> key) const {
  const auto it = type_index_.find(key);
  if (it == type_index_.end()) return std::nullopt;
  return it->second;
}

TypeId CompressionState::acquire(std::span<const LambdaEntry> key) {
  if (const auto it = type_index_.find(key); it != type_index_.end()) {
    ++types_[it->second].count;
    return it->second;
  }
  TypeId id;
  if (!free_types_.empty()) {
    id = free_types_.back();
    free_types_.pop_back();
  } else {
    id = static_cast<TypeId>(types_.size());
    types_.emplace_back();
  }
  TypeRecord& record = types_[id];
  record.key.assign(key.begin(), key.end());
  record.count = 1;
  record.ln_lambda_factorials = ln_lambda_factorials(key);
  record.slots.resize(key.size());
  for (std::size_t j = 0; j < key.size(); ++j) {
    auto& members = cluster_types_[key[j].label];
    record.slots[j] = static_cast<std::uint32_t>(members.size());
    members.push_back(id);
  }
  type_index_.emplace(record.key, id);
  return id;
}

void CompressionState::release(TypeId t) {
  TypeRecord& record = types_[t];
  if (--record.count > 0) return;
  for (std::size_t j = 0; j < record.key.size(); ++j) {
    const Label i = record.key[j].label;
    auto& members = cluster_types_[i];
    const std::uint32_t slot = record.slots[j];
    const TypeId moved = members.back();
    members[slot] = moved;
    members.pop_back();
    if (moved != t) {
      TypeRecord& other = types_[moved];
      for (std::size_t q = 0; q < other.key.size(); ++q) {
        if (other.key[q].label == i) {
          other.slots[q] = slot;
          break;
        }
      }
    }
  }
  type_index_.erase(record.key);
  record.key.clear();
  record.slots.clear();
  free_types_.push_back(t);
}

void CompressionState::relabel(VertexId v, Label from, Label to) {
  const std::uint32_t degree = graph_->degree(v);
  --sizes_[from];
  ++sizes_[to];
  degree_sums_[from] -= degree;
  degree_sums_[to] += degree;

  const auto incident = graph_->incidence(v);
  const auto multiplicity = graph_->multiplicities(v);
  for (std::size_t j = 0; j < incident.size(); ++j) {
    const EdgeId e = incident[j];
    const std::uint32_t mu = multiplicity[j];
    const TypeId old_type = edge_types_[e];
    const auto& old_key = types_[old_type].key;
    const std::uint32_t at_from = lambda_at(old_key, from);
    const std::uint32_t at_to = lambda_at(old_key, to);
    shifted_type(old_key, from, to, mu, scratch_);

    --histogram(from, at_from);
    if (at_from > mu) ++histogram(from, at_from - mu);
    if (at_to > 0) --histogram(to, at_to);
    ++histogram(to, at_to + mu);

    release(old_type);
    edge_types_[e] = acquire(scratch_);
  }
  clustering_.labels[v] = to;
}

MoveDelta CompressionState::apply_move(VertexId v, Label new_label) {
  if (v >= clustering_.labels.size()) throw std::out_of_range("vertex out of range");
  if (new_label >= clustering_.num_labels) throw std::out_of_range("label out of range");
  const MoveDelta delta{v, clustering_.labels[v], new_label, ++next_token_};
  if (delta.from != delta.to) relabel(v, delta.from, delta.to);
  undo_tokens_.push_back(delta.token);
  if (undo_tokens_.size() > kUndoDepth) undo_tokens_.pop_front();
  return delta;
}

void CompressionState::undo(const MoveDelta& delta) {
  if (undo_tokens_.empty() || undo_tokens_.back() != delta.token) {
    throw std::logic_error("undo of a move that is not the most recent un-undone move");
  }
  undo_tokens_.pop_back();
  if (delta.from != delta.to) relabel(delta.vertex, delta.to, delta.from);
}

CompressionStatistics CompressionState::statistics() const {
  CompressionStatistics stats;
  stats.cluster_sizes = sizes_;
  stats.cluster_degree_sums = degree_sums_;
  for_each_type([&](TypeId t) { stats.lambda_counts[types_[t].key] = types_[t].count; });
  stats.intersection_histograms.resize(clustering_.num_labels);
  for (Label i = 0; i < clustering_.num_labels; ++i) {
    for (std::size_t s = 1; s < width_; ++s) {
      if (const auto count = intersection_count(i, s); count > 0) {
        stats.intersection_histograms[i][static_cast<std::uint32_t>(s)] = count;
      }
    }
  }
  stats.edge_types.reserve(edge_types_.size());
  for (TypeId t : edge_types_) stats.edge_types.push_back(types_[t].key);
  return stats;
}

}  // namespace hyperclust
