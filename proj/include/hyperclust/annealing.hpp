#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hyperclust/compression_state.hpp"
#include "hyperclust/entropy.hpp"

namespace hyperclust {

/// Inverse-temperature schedule beta(t), t = 0 .. steps - 1.
struct Schedule {
  enum class Kind { Constant, Geometric, Linear };

  Kind kind = Kind::Geometric;
  double beta0 = 0.1;
  /// Geometric: beta(t) = beta0 * rate^t. Ignored by the other kinds.
  double rate = 1.0;
  /// Linear: beta ramps from beta0 to beta1 over `span` steps and stays there.
  double beta1 = 10.0;
  std::uint64_t span = 1;

  static Schedule constant(double beta);
  static Schedule geometric(double beta0, double rate);
  /// Geometric schedule reaching beta_final after `steps` steps.
  static Schedule geometric_to(double beta0, double beta_final, std::uint64_t steps);
  static Schedule linear(double beta0, double beta1, std::uint64_t steps);

  double beta(std::uint64_t t) const;
  /// Throws std::invalid_argument on negative or non-finite parameters.
  void validate() const;
};

std::string_view to_string(Schedule::Kind kind);
Schedule::Kind parse_schedule_kind(std::string_view name);

struct TracePoint {
  std::uint64_t step = 0;
  double current_ln_z = 0.0;
  double best_ln_z = 0.0;
};

struct ChainConfig {
  Label num_labels = 2;
  std::uint64_t steps = 20000;
  Schedule schedule = Schedule::geometric_to(0.1, 10.0, 20000);
  std::uint64_t seed = 1;
  ObjectiveKind objective = ObjectiveKind::DegreeCorrected;
  /// Start from this labeling; uniformly random when unset.
  std::optional<Clustering> initial;
  /// Record a trace point every this many steps (0 disables tracing).
  std::uint64_t trace_interval = 0;
  /// Called after every step with the step index and current labels.
  std::function<void(std::uint64_t, std::span<const Label>)> observer;

  void validate(const Hypergraph& graph) const;
};

struct RunResult {
  Clustering best_clustering;
  /// ln Z of best_clustering; -inf only if no compatible state was visited.
  double best_ln_z = 0.0;
  std::uint64_t accepted = 0;
  std::uint64_t resyncs = 0;
  std::vector<TracePoint> trace;
  std::uint64_t seed = 0;
  /// Index of the winning restart (0 for a single chain).
  std::uint32_t restart = 0;
};

/// True if ln Z value `a` beats `b`. Incompatible (-inf) values lose to
/// every compatible one.
bool better_ln_z(double a, double b);

/// Metropolis-Hastings annealing over labelings; executes exactly
/// config.steps proposals.
RunResult run_chain(const Hypergraph& graph, const ChainConfig& config);

/// Seed of restart r: the base seed for r = 0, derive_seed(base, r) otherwise.
std::uint64_t restart_seed(std::uint64_t base, std::uint32_t restart);

/// Independent chains seeded restart_seed(config.seed, r); returns the chain
/// with the lowest best ln Z, earliest restart on ties. Chains run on up to
/// `threads` threads (0 = default_thread_count()); the result does not depend
/// on the thread count.
RunResult run_restarts(const Hypergraph& graph, const ChainConfig& config, std::uint32_t restarts,
                       unsigned threads = 0);

/// HYPERCLUST_THREADS if set, otherwise the hardware concurrency.
unsigned default_thread_count();

/// Acceptance probability min(1, exp(-beta * delta)).
double acceptance_probability(double beta, double delta);

}  // namespace hyperclust
