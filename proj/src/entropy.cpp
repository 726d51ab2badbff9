#include "hyperclust/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hyperclust {

namespace {

constexpr std::size_t kMaxMemoCells = std::size_t{1} << 24;

// Running sum of finite log factors plus a count of zero factors. Extended
// precision keeps unchanged terms cancelling exactly between two from-scratch
// evaluations.
struct Accumulator {
  long double finite = 0.0L;
  std::int64_t zero_factors = 0;

  void add(double term, std::int64_t sign = 1) {
    if (is_ln_zero(term)) {
      zero_factors += sign;
    } else {
      finite += sign * static_cast<long double>(term);
    }
  }
  void add_weighted(double term, std::int64_t weight) {
    if (weight == 0) return;
    if (is_ln_zero(term)) {
      zero_factors += weight;
    } else {
      finite += static_cast<long double>(weight) * term;
    }
  }
  LnZ ln_z() const { return {static_cast<double>(finite), zero_factors}; }
  EntropyDelta delta() const { return {static_cast<double>(finite), zero_factors}; }
};

}  // namespace

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::SimpleHypergraph: return "simple";
    case ObjectiveKind::MultiHypergraph: return "multi";
    case ObjectiveKind::DegreeCorrected: return "degree-corrected";
    case ObjectiveKind::RosvallBergstromGraph: return "rb-graph";
  }
  return "unknown";
}

ObjectiveKind parse_objective(std::string_view name) {
  if (name == "simple") return ObjectiveKind::SimpleHypergraph;
  if (name == "multi") return ObjectiveKind::MultiHypergraph;
  if (name == "degree-corrected") return ObjectiveKind::DegreeCorrected;
  if (name == "rb-graph") return ObjectiveKind::RosvallBergstromGraph;
  throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

void validate_objective(const Hypergraph& graph, ObjectiveKind kind) {
  if (kind == ObjectiveKind::RosvallBergstromGraph && !graph.is_dyadic()) {
    throw std::invalid_argument("objective requires dyadic edges");
  }
}

Objective::Objective(const Hypergraph& graph, ObjectiveKind kind)
    : kind_(kind), width_(graph.max_edge_size() + 1) {
  validate_objective(graph, kind);
  const std::size_t rows = graph.num_vertices() + 1;
  if (rows * width_ <= kMaxMemoCells) {
    memo_rows_ = rows;
    binomial_memo_.assign(rows * width_, std::numeric_limits<double>::quiet_NaN());
  }
  hist_change_from_.assign(width_, 0);
  hist_change_to_.assign(width_, 0);
}

double Objective::ln_choose(std::uint64_t size, std::uint32_t s) {
  if (size < memo_rows_ && s < width_) {
    double& cell = binomial_memo_[size * width_ + s];
    if (std::isnan(cell)) cell = ln_binomial(size, s);
    return cell;
  }
  return ln_binomial(size, s);
}

LnZ Objective::evaluate(const CompressionState& state) {
  switch (kind_) {
    case ObjectiveKind::SimpleHypergraph: return evaluate_simple(state);
    case ObjectiveKind::MultiHypergraph: return evaluate_multi(state);
    case ObjectiveKind::DegreeCorrected: return evaluate_degree_corrected(state);
    case ObjectiveKind::RosvallBergstromGraph: return evaluate_rosvall_bergstrom(state);
  }
  return {};
}

EntropyDelta Objective::delta(const CompressionState& state, VertexId v, Label to) {
  if (to >= state.num_labels()) throw std::out_of_range("label out of range");
  ++counters_.delta_calls;
  const Label from = state.label(v);
  if (from == to) return {};
  switch (kind_) {
    case ObjectiveKind::SimpleHypergraph:
    case ObjectiveKind::RosvallBergstromGraph:
      // For dyadic edges the graph count is term-for-term the simple count.
      return delta_simple(state, v, from, to);
    case ObjectiveKind::MultiHypergraph: return delta_multi(state, v, from, to);
    case ObjectiveKind::DegreeCorrected: return delta_degree_corrected(state, v, from, to);
  }
  return {};
}

// --- multi-hypergraph: sum_i sum_s N_i[s] ln C(|C_i|, s) ---

LnZ Objective::evaluate_multi(const CompressionState& state) {
  Accumulator acc;
  for (Label i = 0; i < state.num_labels(); ++i) {
    const std::uint64_t size = state.cluster_size(i);
    for (std::size_t s = 1; s < state.histogram_width(); ++s) {
      const auto count = static_cast<std::int64_t>(state.intersection_count(i, s));
      if (count > 0) acc.add_weighted(ln_choose(size, static_cast<std::uint32_t>(s)), count);
    }
  }
  return acc.ln_z();
}

EntropyDelta Objective::delta_multi(const CompressionState& state, VertexId v, Label from,
                                    Label to) {
  const Hypergraph& graph = state.hypergraph();
  const auto incident = graph.incidence(v);
  const auto multiplicity = graph.multiplicities(v);
  counters_.incident_edges += incident.size();
  for (std::size_t j = 0; j < incident.size(); ++j) {
    const auto& key = state.type_key(state.edge_type(incident[j]));
    const std::uint32_t mu = multiplicity[j];
    const std::uint32_t at_from = lambda_at(key, from);
    const std::uint32_t at_to = lambda_at(key, to);
    --hist_change_from_[at_from];
    if (at_from > mu) ++hist_change_from_[at_from - mu];
    if (at_to > 0) --hist_change_to_[at_to];
    ++hist_change_to_[at_to + mu];
  }

  Accumulator acc;
  auto reprice = [&](Label i, std::uint64_t new_size, std::vector<std::int64_t>& change) {
    const std::uint64_t old_size = state.cluster_size(i);
    for (std::size_t s = 1; s < width_; ++s) {
      const auto old_count = static_cast<std::int64_t>(state.intersection_count(i, s));
      const std::int64_t new_count = old_count + change[s];
      change[s] = 0;
      if (old_count == 0 && new_count == 0) continue;
      ++counters_.entries_repriced;
      const auto ss = static_cast<std::uint32_t>(s);
      acc.add_weighted(ln_choose(new_size, ss), new_count);
      acc.add_weighted(ln_choose(old_size, ss), -old_count);
    }
    change[0] = 0;
  };
  reprice(from, state.cluster_size(from) - 1, hist_change_from_);
  reprice(to, state.cluster_size(to) + 1, hist_change_to_);
  return acc.delta();
}

// --- degree-corrected: sum_i ln e_i! - sum_l ln e_l! - sum_l e_l sum_i ln l_i! ---

LnZ Objective::evaluate_degree_corrected(const CompressionState& state) const {
  Accumulator acc;
  for (Label i = 0; i < state.num_labels(); ++i) acc.add(ln_factorial(state.cluster_degree_sum(i)));
  state.for_each_type([&](TypeId t) {
    const std::uint64_t count = state.type_count(t);
    acc.add(ln_factorial(count), -1);
    acc.add_weighted(state.type_ln_lambda_factorials(t), -static_cast<std::int64_t>(count));
  });
  return acc.ln_z();
}

void Objective::collect_type_changes(const CompressionState& state, VertexId v, Label from,
                                     Label to) {
  existing_changes_.clear();
  novel_changes_.clear();
  const Hypergraph& graph = state.hypergraph();
  const auto incident = graph.incidence(v);
  const auto multiplicity = graph.multiplicities(v);
  counters_.incident_edges += incident.size();
  for (std::size_t j = 0; j < incident.size(); ++j) {
    const TypeId old_type = state.edge_type(incident[j]);
    --existing_changes_[old_type];
    shifted_type(state.type_key(old_type), from, to, multiplicity[j], scratch_);
    if (const auto found = state.find_type(scratch_)) {
      ++existing_changes_[*found];
    } else if (const auto it = novel_changes_.find(std::span<const LambdaEntry>(scratch_));
               it != novel_changes_.end()) {
      ++it->second;
    } else {
      novel_changes_.emplace(scratch_, 1);
    }
  }
}

EntropyDelta Objective::delta_degree_corrected(const CompressionState& state, VertexId v,
                                               Label from, Label to) {
  const std::uint64_t degree = state.hypergraph().degree(v);
  Accumulator acc;
  if (degree == 0) return acc.delta();
  const std::uint64_t e_from = state.cluster_degree_sum(from);
  const std::uint64_t e_to = state.cluster_degree_sum(to);
  acc.add(ln_factorial(e_from - degree));
  acc.add(ln_factorial(e_from), -1);
  acc.add(ln_factorial(e_to + degree));
  acc.add(ln_factorial(e_to), -1);

  collect_type_changes(state, v, from, to);
  for (const auto& [t, change] : existing_changes_) {
    if (change == 0) continue;
    ++counters_.entries_repriced;
    const auto count = static_cast<std::int64_t>(state.type_count(t));
    acc.add(ln_factorial(static_cast<std::uint64_t>(count + change)), -1);
    acc.add(ln_factorial(static_cast<std::uint64_t>(count)));
    acc.add_weighted(state.type_ln_lambda_factorials(t), -change);
  }
  for (const auto& [key, change] : novel_changes_) {
    ++counters_.entries_repriced;
    acc.add(ln_factorial(static_cast<std::uint64_t>(change)), -1);
    acc.add_weighted(ln_lambda_factorials(key), -change);
  }
  return acc.delta();
}

// --- simple hypergraph: sum_l ln C(prod_i C(|C_i|, l_i), e_l) ---

namespace {

template <class SizeOf, class LnChoose>
double simple_term(std::span<const LambdaEntry> key, std::uint64_t count, SizeOf&& size_of,
                   LnChoose&& ln_choose) {
  if (count == 0) return 0.0;
  double ln_candidates = 0.0;
  for (const auto& entry : key) {
    const double factor = ln_choose(size_of(entry.label), entry.count);
    if (is_ln_zero(factor)) return kLnZero;
    ln_candidates += factor;
  }
  return ln_binomial_real(ln_candidates, count);
}

}  // namespace

LnZ Objective::evaluate_simple(const CompressionState& state) {
  Accumulator acc;
  auto size_of = [&](Label i) { return state.cluster_size(i); };
  auto choose = [this](std::uint64_t n, std::uint32_t s) { return ln_choose(n, s); };
  state.for_each_type([&](TypeId t) {
    acc.add(simple_term(state.type_key(t), state.type_count(t), size_of, choose));
  });
  return acc.ln_z();
}

EntropyDelta Objective::delta_simple(const CompressionState& state, VertexId v, Label from,
                                     Label to) {
  collect_type_changes(state, v, from, to);
  auto old_size = [&](Label i) { return state.cluster_size(i); };
  auto new_size = [&](Label i) {
    const std::uint64_t size = state.cluster_size(i);
    if (i == from) return size - 1;
    if (i == to) return size + 1;
    return size;
  };
  auto choose = [this](std::uint64_t n, std::uint32_t s) { return ln_choose(n, s); };

  Accumulator acc;
  auto reprice = [&](TypeId t) {
    ++counters_.entries_repriced;
    const auto& key = state.type_key(t);
    const std::uint64_t count = state.type_count(t);
    std::int64_t change = 0;
    if (const auto it = existing_changes_.find(t); it != existing_changes_.end()) {
      change = it->second;
    }
    const auto new_count = static_cast<std::uint64_t>(static_cast<std::int64_t>(count) + change);
    acc.add(simple_term(key, new_count, new_size, choose));
    acc.add(simple_term(key, count, old_size, choose), -1);
  };
  // Every type whose candidate count or multiplicity changes has a nonzero
  // entry at `from` or `to`.
  for (TypeId t : state.types_with_label(from)) reprice(t);
  for (TypeId t : state.types_with_label(to)) {
    if (lambda_at(state.type_key(t), from) == 0) reprice(t);
  }
  for (const auto& [key, change] : novel_changes_) {
    ++counters_.entries_repriced;
    acc.add(simple_term(key, static_cast<std::uint64_t>(change), new_size, choose));
  }
  return acc.delta();
}

// --- dyadic graph count with the module matrix M_ij ---

LnZ Objective::evaluate_rosvall_bergstrom(const CompressionState& state) const {
  Accumulator acc;
  state.for_each_type([&](TypeId t) {
    const auto& key = state.type_key(t);
    const std::uint64_t edges_in_block = state.type_count(t);
    std::uint64_t pairs = 0;
    if (key.size() == 1) {
      // within-cluster block M_ii over C(|C_i|, 2) vertex pairs
      const std::uint64_t size = state.cluster_size(key[0].label);
      pairs = size * (size - (size > 0 ? 1 : 0)) / 2;
    } else {
      // between-cluster block M_ij over |C_i| |C_j| vertex pairs
      pairs = state.cluster_size(key[0].label) * state.cluster_size(key[1].label);
    }
    acc.add(ln_binomial(pairs, edges_in_block));
  });
  return acc.ln_z();
}

double ln_Z(const CompressionState& state, ObjectiveKind kind) {
  Objective objective(state.hypergraph(), kind);
  return objective.evaluate(state).value();
}

EntropyDelta delta_ln_Z(const CompressionState& state, VertexId v, Label new_label,
                        ObjectiveKind kind) {
  Objective objective(state.hypergraph(), kind);
  return objective.delta(state, v, new_label);
}

}  // namespace hyperclust
