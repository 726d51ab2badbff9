#include "hyperclust/annealing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "hyperclust/rng.hpp"

namespace hyperclust {

namespace {

// Accepted moves between from-scratch recomputations of ln Z.
constexpr std::uint64_t kResyncInterval = 100000;
constexpr double kResyncTolerance = 1e-6;

}  // namespace

Schedule Schedule::constant(double beta) {
  Schedule s;
  s.kind = Kind::Constant;
  s.beta0 = beta;
  return s;
}

Schedule Schedule::geometric(double beta0, double rate) {
  Schedule s;
  s.kind = Kind::Geometric;
  s.beta0 = beta0;
  s.rate = rate;
  return s;
}

Schedule Schedule::geometric_to(double beta0, double beta_final, std::uint64_t steps) {
  Schedule s = geometric(beta0, 1.0);
  s.beta1 = beta_final;
  if (steps > 0 && beta0 > 0.0 && beta_final > 0.0) {
    s.rate = std::exp(std::log(beta_final / beta0) / static_cast<double>(steps));
  }
  return s;
}

Schedule Schedule::linear(double beta0, double beta1, std::uint64_t steps) {
  Schedule s;
  s.kind = Kind::Linear;
  s.beta0 = beta0;
  s.beta1 = beta1;
  s.span = std::max<std::uint64_t>(steps, 1);
  return s;
}

double Schedule::beta(std::uint64_t t) const {
  switch (kind) {
    case Kind::Constant: return beta0;
    case Kind::Geometric: return beta0 * std::exp(static_cast<double>(t) * std::log(rate));
    case Kind::Linear: {
      const double fraction = std::min(1.0, static_cast<double>(t) / static_cast<double>(span));
      return beta0 + (beta1 - beta0) * fraction;
    }
  }
  return beta0;
}

void Schedule::validate() const {
  auto bad = [](double x) { return !std::isfinite(x) || x < 0.0; };
  if (bad(beta0)) throw std::invalid_argument("beta0 must be finite and nonnegative");
  if (kind == Kind::Geometric && (!std::isfinite(rate) || rate <= 0.0)) {
    throw std::invalid_argument("geometric rate must be finite and positive");
  }
  if (kind == Kind::Linear && bad(beta1)) {
    throw std::invalid_argument("final beta must be finite and nonnegative");
  }
}

std::string_view to_string(Schedule::Kind kind) {
  switch (kind) {
    case Schedule::Kind::Constant: return "constant";
    case Schedule::Kind::Geometric: return "geometric";
    case Schedule::Kind::Linear: return "linear";
  }
  return "unknown";
}

Schedule::Kind parse_schedule_kind(std::string_view name) {
  if (name == "constant") return Schedule::Kind::Constant;
  if (name == "geometric") return Schedule::Kind::Geometric;
  if (name == "linear") return Schedule::Kind::Linear;
  throw std::invalid_argument("unknown schedule '" + std::string(name) + "'");
}

void ChainConfig::validate(const Hypergraph& graph) const {
  if (num_labels == 0) throw std::invalid_argument("cluster count must be at least 1");
  schedule.validate();
  validate_objective(graph, objective);
  if (initial) {
    initial->validate();
    if (initial->num_labels != num_labels) {
      throw std::invalid_argument("initial clustering has a different label count");
    }
    if (initial->labels.size() != graph.num_vertices()) {
      throw std::invalid_argument("initial clustering length differs from vertex count");
    }
  }
}

bool better_ln_z(double a, double b) {
  if (is_ln_zero(a)) return false;
  if (is_ln_zero(b)) return true;
  return a < b;
}

double acceptance_probability(double beta, double delta) {
  if (delta <= 0.0) return 1.0;
  return std::exp(-beta * delta);
}

RunResult run_chain(const Hypergraph& graph, const ChainConfig& config) {
  config.validate(graph);
  Rng rng(config.seed);
  const std::size_t n = graph.num_vertices();
  const Label m = config.num_labels;

  Clustering start;
  if (config.initial) {
    start = *config.initial;
  } else {
    start.num_labels = m;
    start.labels.resize(n);
    for (auto& label : start.labels) label = static_cast<Label>(rng.below(m));
  }

  CompressionState state(graph, start);
  Objective objective(graph, config.objective);
  LnZ current = objective.evaluate(state);

  RunResult result;
  result.seed = config.seed;
  result.best_clustering = std::move(start);
  double best = current.value();
  std::uint64_t since_sync = 0;

  for (std::uint64_t t = 0; t < config.steps; ++t) {
    if (n > 0) {
      const auto v = static_cast<VertexId>(rng.below(n));
      const auto target = static_cast<Label>(rng.below(m));
      const double x = rng.uniform();
      const EntropyDelta delta = objective.delta(state, v, target);
      const LnZ proposed = current + delta;

      bool accept;
      if (!current.compatible()) {
        // Drift toward compatibility; never away from it.
        accept = proposed.zero_factors <= current.zero_factors;
      } else if (!proposed.compatible()) {
        accept = false;
      } else {
        accept = x < acceptance_probability(config.schedule.beta(t), delta.finite);
      }

      if (accept) {
        ++result.accepted;
        if (target != state.label(v)) {
          state.apply_move(v, target);
          current = proposed;
          if (++since_sync >= kResyncInterval) {
            since_sync = 0;
            const LnZ fresh = objective.evaluate(state);
            if (fresh.zero_factors != current.zero_factors ||
                std::abs(fresh.finite - current.finite) > kResyncTolerance) {
              ++result.resyncs;
            }
            current = fresh;
          }
          if (better_ln_z(current.value(), best)) {
            best = current.value();
            result.best_clustering.labels.assign(state.labels().begin(), state.labels().end());
          }
        }
      }
    }
    if (config.trace_interval > 0 && t % config.trace_interval == 0) {
      result.trace.push_back({t, current.value(), best});
    }
    if (config.observer) config.observer(t, state.labels());
  }

  // Report the from-scratch value so the result is reproducible from the
  // labeling alone.
  CompressionState best_state(graph, result.best_clustering);
  result.best_ln_z = objective.evaluate(best_state).value();
  return result;
}

std::uint64_t restart_seed(std::uint64_t base, std::uint32_t restart) {
  return restart == 0 ? base : derive_seed(base, restart);
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("HYPERCLUST_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) return static_cast<unsigned>(parsed);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunResult run_restarts(const Hypergraph& graph, const ChainConfig& config, std::uint32_t restarts,
                       unsigned threads) {
  if (restarts == 0) throw std::invalid_argument("restarts must be at least 1");
  config.validate(graph);
  if (threads == 0) threads = default_thread_count();
  // The observer is not synchronized.
  if (config.observer) threads = 1;
  threads = std::min<unsigned>(threads, restarts);

  std::vector<RunResult> results(restarts);
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::uint32_t r = next++; r < restarts; r = next++) {
      try {
        ChainConfig chain = config;
        chain.seed = restart_seed(config.seed, r);
        results[r] = run_chain(graph, chain);
        results[r].restart = r;
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::uint32_t winner = 0;
  for (std::uint32_t r = 1; r < restarts; ++r) {
    if (better_ln_z(results[r].best_ln_z, results[winner].best_ln_z)) winner = r;
  }
  return std::move(results[winner]);
}

}  // namespace hyperclust
