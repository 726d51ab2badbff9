#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hyperclust/combinatorics.hpp"
#include "hyperclust/compression_state.hpp"

namespace hyperclust {

/// Counting model used to price a compression.
enum class ObjectiveKind {
  SimpleHypergraph,
  MultiHypergraph,
  DegreeCorrected,
  RosvallBergstromGraph,
};

std::string_view to_string(ObjectiveKind kind);
/// Accepts the CLI spellings: simple, multi, degree-corrected, rb-graph.
ObjectiveKind parse_objective(std::string_view name);

/// Throws std::invalid_argument if `kind` cannot price `graph`.
void validate_objective(const Hypergraph& graph, ObjectiveKind kind);

/// ln Z split into the sum of its finite factors and the number of factors
/// that are exactly zero. Any zero factor makes the compression incompatible
/// and ln Z = -inf.
struct LnZ {
  double finite = 0.0;
  std::int64_t zero_factors = 0;

  bool compatible() const { return zero_factors == 0; }
  double value() const { return compatible() ? finite : kLnZero; }
};

/// Change of an LnZ under a move: both components are differences.
struct EntropyDelta {
  double finite = 0.0;
  std::int64_t zero_factors = 0;
};

inline LnZ operator+(LnZ base, const EntropyDelta& delta) {
  base.finite += delta.finite;
  base.zero_factors += delta.zero_factors;
  return base;
}

/// Work counters, for checking that move pricing stays local.
struct EvaluationCounters {
  std::uint64_t delta_calls = 0;
  /// Incident (edge, multiplicity) pairs visited.
  std::uint64_t incident_edges = 0;
  /// Histogram cells or lambda-types re-priced.
  std::uint64_t entries_repriced = 0;
};

/// Objective bound to one hypergraph. Holds memo tables and scratch buffers,
/// so each chain owns its own instance.
class Objective {
 public:
  Objective(const Hypergraph& graph, ObjectiveKind kind);

  ObjectiveKind kind() const { return kind_; }

  LnZ evaluate(const CompressionState& state);

  /// Price of moving v to `to` without touching the state.
  EntropyDelta delta(const CompressionState& state, VertexId v, Label to);

  const EvaluationCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }

 private:
  double ln_choose(std::uint64_t size, std::uint32_t s);
  void collect_type_changes(const CompressionState& state, VertexId v, Label from, Label to);

  LnZ evaluate_simple(const CompressionState& state);
  LnZ evaluate_multi(const CompressionState& state);
  LnZ evaluate_degree_corrected(const CompressionState& state) const;
  LnZ evaluate_rosvall_bergstrom(const CompressionState& state) const;

  EntropyDelta delta_simple(const CompressionState& state, VertexId v, Label from, Label to);
  EntropyDelta delta_multi(const CompressionState& state, VertexId v, Label from, Label to);
  EntropyDelta delta_degree_corrected(const CompressionState& state, VertexId v, Label from,
                                      Label to);

  ObjectiveKind kind_;
  std::size_t width_;
  // ln C(size, s) memo, row-major by size; NaN marks an empty cell.
  std::vector<double> binomial_memo_;
  std::size_t memo_rows_ = 0;

  EvaluationCounters counters_;
  std::vector<std::int64_t> hist_change_from_;
  std::vector<std::int64_t> hist_change_to_;
  std::unordered_map<TypeId, std::int64_t> existing_changes_;
  std::unordered_map<LambdaType, std::int64_t, LambdaTypeHash, LambdaTypeEqual> novel_changes_;
  LambdaType scratch_;
};

/// From-scratch ln Z(gamma); kLnZero if the compression is incompatible.
double ln_Z(const CompressionState& state, ObjectiveKind kind);

/// ln Z(c') - ln Z(c) for moving v to new_label, split into finite and
/// zero-factor parts. The state is not modified.
EntropyDelta delta_ln_Z(const CompressionState& state, VertexId v, Label new_label,
                        ObjectiveKind kind);

}  // namespace hyperclust
