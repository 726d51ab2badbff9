#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include <cmath>
#include <numbers>

#include "hyperclust/generator.hpp"
#include "hyperclust/model_selection.hpp"

using namespace hyperclust;

TEST_CASE("partition cost hand example") {
  // n = 4, m = 2, two 2-edges: 4 log2 2 + C(3,2) log2 2 = 7 bits.
  const auto h = Hypergraph::build({{0, 1}, {2, 3}});
  CHECK(partition_cost_bits(h, 2) == 7.0);
}

TEST_CASE("partition cost with one cluster") {
  const auto h = Hypergraph::build({{0, 1}, {2, 3}, {1, 2}, {0, 1, 2}, {1, 2, 3}, {4}});
  CHECK(partition_cost_bits(h, 1) == doctest::Approx(std::log2(3.0) + std::log2(2.0)));
  const auto empty = Hypergraph::build({});
  CompressionState state(empty, {{}, 1});
  const auto length = description_length(empty, state, ObjectiveKind::DegreeCorrected);
  CHECK(length.partition_bits == 0.0);
  CHECK(length.conditional_bits == 0.0);
  CHECK_THROWS_AS(partition_cost_bits(h, 0), std::invalid_argument);
}

TEST_CASE("size-one edges and singleton sizes carry no partition term") {
  const auto h = Hypergraph::build({{0}, {1}, {2}, {0, 1}});
  // l_2 = 1 contributes C(m+1, 2) log 1 = 0.
  CHECK(partition_cost_bits(h, 3) == doctest::Approx(3.0 * std::log2(3.0)));
}

TEST_CASE("partition cost grows strictly with m") {
  const auto h = generate_planted({30, 0.7, 0.7, 3}).graph;
  for (Label m = 1; m < 12; ++m) CHECK(partition_cost_bits(h, m + 1) > partition_cost_bits(h, m));
}

TEST_CASE("conditional cost is ln Z in bits") {
  const auto planted = generate_planted({20, 0.9, 0.9, 4});
  CompressionState state(planted.graph, planted.truth);
  for (auto kind : {ObjectiveKind::SimpleHypergraph, ObjectiveKind::MultiHypergraph,
                    ObjectiveKind::DegreeCorrected}) {
    const auto length = description_length(planted.graph, state, kind);
    CHECK(length.conditional_bits == ln_Z(state, kind) / std::numbers::ln2);
    CHECK(length.total_bits() == length.partition_bits + length.conditional_bits);
  }
}

TEST_CASE("sweep over a single m") {
  const auto planted = generate_planted({20, 0.9, 0.9, 5});
  ChainConfig config;
  config.steps = 2000;
  config.schedule = Schedule::geometric_to(0.1, 10.0, 2000);
  const auto report = mdl_sweep(planted.graph, 1, 1, config, 2);
  REQUIRE(report.records.size() == 1);
  CHECK(report.m_star == 1);
  CHECK_THROWS_AS(mdl_sweep(planted.graph, 3, 2, config, 1), std::invalid_argument);
}

TEST_CASE("sweep on a strongly assortative instance") {
  const auto planted = generate_planted({50, 0.95, 0.95, 6});
  ChainConfig config;
  config.steps = 20000;
  config.schedule = Schedule::geometric_to(0.1, 10.0, 20000);
  const auto report = mdl_sweep(planted.graph, 1, 4, config, 4);
  REQUIRE(report.records.size() == 4);
  double best = report.records[0].total_bits;
  Label argmin = 1;
  for (const auto& record : report.records) {
    CHECK(record.total_bits == record.partition_bits + record.conditional_bits);
    CompressionState state(planted.graph, record.best_clustering);
    CHECK(record.conditional_bits ==
          ln_Z(state, ObjectiveKind::DegreeCorrected) / std::numbers::ln2);
    CHECK(record.partition_bits == partition_cost_bits(planted.graph, record.m));
    if (record.total_bits < best) {
      best = record.total_bits;
      argmin = record.m;
    }
  }
  CHECK(report.m_star == argmin);
  MESSAGE("m* = " << report.m_star);
}
