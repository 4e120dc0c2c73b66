#include "doctest.h"

#include <cmath>

#include "generators.hpp"
#include "trace_checks.hpp"
#include "wfd/algorithms.hpp"

using namespace wfd;
using wfd::testing::pick;
using wfd::testing::random_instance;

namespace {

using Order = std::vector<std::size_t>;

}  // namespace

TEST_CASE("picking order with equal weights alternates") {
  const Instance inst({1.0, 1.0}, UtilityMatrix(2, 4, 0.5));
  const auto run = weighted_picking_sequence(inst);
  CHECK(run.trace.order() == Order{0, 1, 0, 1});
  CHECK(run.trace.picked_items() == Order{0, 1, 2, 3});
}

TEST_CASE("picking order with weights (1,2)") {
  const Instance inst({1.0, 2.0}, UtilityMatrix(2, 6, 0.5));
  const auto run = weighted_picking_sequence(inst);
  CHECK(run.trace.order() == Order{0, 1, 1, 0, 1, 1});
  CHECK(run.allocation.bundle(0).size() == 2);
  CHECK(run.allocation.bundle(1).size() == 4);

  const auto& t = run.trace;
  CHECK(t.pick_step(0, 0) == 0);
  CHECK(t.pick_step(0, 1) == 1);
  CHECK(t.pick_step(0, 2) == 4);
  CHECK(t.pick_step(1, 3) == 5);
  CHECK(t.picks_through(1, 3) == 2);
  CHECK(t.picks_through(0, 0) == 0);
  CHECK(t.picked_item(1, 1) == 1);
  // Agent 0 picks at 1, 4: agent 1 picks at 2, 3 (minus her first) then 5, 6.
  CHECK(t.inter_pick_counts(0, 1) == Order{1, 2});
  // Agent 1 picks at 2, 3, 5, 6: agent 0's first pick is discounted, then step 4.
  CHECK(t.inter_pick_counts(1, 0) == Order{0, 1, 0, 0});
}

TEST_CASE("hand-simulated picking allocation") {
  const Instance inst({1.0, 1.0}, UtilityMatrix({{0.9, 0.5, 0.1}, {0.8, 0.7, 0.2}}));
  const auto run = weighted_picking_sequence(inst);
  CHECK(run.allocation.bundle(0) == Order{0, 2});
  CHECK(run.allocation.bundle(1) == Order{1});
  CHECK(run.trace.picked_items() == Order{0, 1, 2});
}

TEST_CASE("item ties go to the lowest index") {
  const Instance inst({1.0, 1.0}, UtilityMatrix({{0.3, 0.7, 0.7}, {0.7, 0.7, 0.1}}));
  const auto run = weighted_picking_sequence(inst);
  CHECK(run.trace.picked_items() == Order{1, 0, 2});
}

TEST_CASE("trace constructor rejects inconsistent columns") {
  CHECK_THROWS_AS(PickingTrace(2, {0, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(PickingTrace(2, {0, 2}, {0, 1}), std::invalid_argument);
}

TEST_CASE("picking sequence output is WEF1 and its trace obeys the balance bounds") {
  SeedStream rng(1001);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = pick(rng, 2, 8);
    const std::size_t m = pick(rng, 1, 40);
    const auto inst = random_instance(rng, n, m);
    const auto run = weighted_picking_sequence(inst);
    CAPTURE(trial);
    REQUIRE(is_wef1(inst, run.allocation).holds);
    REQUIRE(wfd::testing::trace_counts_consistent(run.trace, run.allocation));
    const auto balance = wfd::testing::pick_balance_violations(run.trace, inst.weights());
    REQUIRE_MESSAGE(balance.empty(), wfd::testing::describe(balance.front()));
    const auto cumulative = wfd::testing::cumulative_pick_violations(run.trace, inst.weights());
    REQUIRE_MESSAGE(cumulative.empty(), wfd::testing::describe(cumulative.front()));
  }
}

TEST_CASE("picking sequence handles extreme weight ratios and more agents than items") {
  const Instance inst({1.0, 1000.0, 1.0}, UtilityMatrix(3, 2, 1.0));
  const auto run = weighted_picking_sequence(inst);
  CHECK(run.trace.order() == Order{0, 1});
  CHECK(run.allocation.bundle(2).empty());
  CHECK(is_wef1(inst, run.allocation).holds);
  CHECK(wfd::testing::pick_balance_violations(run.trace, inst.weights()).empty());
}

TEST_CASE("round robin") {
  const Instance two({3.0, 1.0}, UtilityMatrix(2, 4, 0.5));
  CHECK(round_robin(two).owners(4) == Order{0, 1, 0, 1});

  const Instance distinct({1.0, 1.0, 1.0}, UtilityMatrix({{0.9, 0.1, 0.1}, {0.1, 0.9, 0.1}, {0.1, 0.1, 0.9}}));
  const auto a = round_robin(distinct);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.bundle(i) == Order{i});

  SeedStream rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = pick(rng, 1, 6);
    const std::size_t m = pick(rng, 1, 30);
    const auto inst = random_instance(rng, n, m);
    const auto unit = inst.with_weights(std::vector<double>(n, 1.0));
    REQUIRE(round_robin(inst) == weighted_picking_sequence(unit).allocation);
  }
}

TEST_CASE("matching parameters at n = 2000, m = 5200") {
  const Instance inst(std::vector<double>(2000, 1.0), UtilityMatrix(2000, 5200, 0.5));
  const auto params = wprop_parameters(inst, DistMeta{1.0, 0.5}, 0.3);
  // tau = 1 - 16 ln(5200) / 2000 with the natural logarithm.
  CHECK(params.tau == doctest::Approx(1.0 - 16.0 * std::log(5200.0) / 2000.0).epsilon(1e-14));
  CHECK(params.tau == doctest::Approx(0.93155).epsilon(1e-5));
  CHECK(params.delta == doctest::Approx((1.0 + 0.3 / 1.3) * params.tau - 1.0).epsilon(1e-14));
  CHECK(params.weight_ratio == 1.0);
  CHECK(params.canonical);
  REQUIRE(params.quotas.size() == 2000);
  std::size_t sum = 0;
  for (std::size_t s : params.quotas) {
    CHECK(s == 2);
    sum += s;
  }
  CHECK(sum == 4000);
  CHECK(sum <= 5200);
}

TEST_CASE("matching parameters reject small instances and bad inputs") {
  const Instance inst({1.0, 1.0}, UtilityMatrix(2, 4, 0.5));
  CHECK_THROWS_AS(wprop_parameters(inst, DistMeta{1.0, 0.5}, 0.3), ThresholdInvalid);
  CHECK_THROWS_AS(matching_based_wprop(inst, DistMeta{1.0, 0.5}, 0.3), ThresholdInvalid);
  // tau overridden but delta still derived from it: 1.23 * 0.5 - 1 < 0.
  CHECK_THROWS_AS(wprop_parameters(inst, DistMeta{1.0, 0.5}, 0.3, {0.5, std::nullopt}), ThresholdInvalid);
  CHECK_THROWS_AS(wprop_parameters(inst, DistMeta{1.0, 0.5}, 0.0, {0.9, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(wprop_parameters(inst, DistMeta{1.0, 1.0}, 0.3, {0.9, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(wprop_parameters(inst, DistMeta{1.0, 0.5}, 0.3, {1.5, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(wprop_parameters(inst, DistMeta{1.0, 0.5}, 0.3, {0.9, Order{1}}), std::invalid_argument);
  CHECK_THROWS_AS(wprop_parameters(inst, DistMeta{1.0, 0.5}, 0.3, {0.9, Order{1, 0}}), std::invalid_argument);

  const auto overridden = wprop_parameters(inst, DistMeta{1.0, 0.5}, 0.3, {0.5, Order{1, 2}});
  CHECK_FALSE(overridden.canonical);
  CHECK(overridden.quotas == Order{1, 2});
}

TEST_CASE("matching with all-ones utilities gives every agent exactly s_i items") {
  const Instance inst({1.0, 2.0, 3.0}, UtilityMatrix(3, 12, 1.0));
  const auto outcome = matching_based_wprop(inst, DistMeta{1.0, 0.5}, 0.3, {0.9, Order{1, 2, 3}});
  REQUIRE(std::holds_alternative<MatchingAllocation>(outcome));
  const auto& result = std::get<MatchingAllocation>(outcome);
  const auto matched = result.matching.by_left(3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(matched[i].size() == i + 1);
  // The six unmatched items are appended to agent 0.
  CHECK(result.allocation.bundle(0).size() == 7);
  CHECK(result.allocation.bundle(1).size() == 2);
  CHECK(result.allocation.bundle(2).size() == 3);
  CHECK_NOTHROW(result.allocation.validate(inst));
}

TEST_CASE("matching reports a deficient set when an agent values nothing above tau") {
  UtilityMatrix u(3, 12, 1.0);
  for (std::size_t g = 0; g < 12; ++g) u(1, g) = 0.0;
  const Instance inst({1.0, 1.0, 1.0}, u);
  const auto outcome = matching_based_wprop(inst, DistMeta{1.0, 0.5}, 0.3, {0.9, std::nullopt});
  REQUIRE(std::holds_alternative<NoSaturatingMatching>(outcome));
  const auto& failure = std::get<NoSaturatingMatching>(outcome);
  // delta = (1 + 0.3/1.3) 0.9 - 1, s_i = ceil((1 + delta) 12 / (6 * 0.9)) = 3.
  CHECK(failure.parameters.quotas == Order{3, 3, 3});
  const auto& y = failure.witness.agents;
  CHECK(std::find(y.begin(), y.end(), 1) != y.end());
  CHECK(failure.witness.neighborhood.size() < failure.witness.demand);
}

TEST_CASE("matching with quotas above the item count fails with every agent as witness") {
  const Instance inst({1.0, 1.0}, UtilityMatrix(2, 3, 1.0));
  const auto outcome = matching_based_wprop(inst, DistMeta{1.0, 0.5}, 0.3, {0.9, Order{2, 2}});
  REQUIRE(std::holds_alternative<NoSaturatingMatching>(outcome));
  CHECK(std::get<NoSaturatingMatching>(outcome).witness.agents == Order{0, 1});
  CHECK(std::get<NoSaturatingMatching>(outcome).witness.demand == 4);
}

TEST_CASE("matched items are eligible and bundles carry at least s_i tau") {
  SeedStream rng(77);
  std::size_t successes = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = pick(rng, 2, 6);
    const std::size_t m = pick(rng, 3 * n, 8 * n);
    const auto inst = random_instance(rng, n, m, 1.0, 3.0);
    const double tau = rng.uniform(0.3, 0.8);
    const auto quotas = wfd::testing::random_quotas(rng, n, m);
    const auto outcome = matching_based_wprop(inst, DistMeta{1.0, 0.5}, 0.3, {tau, quotas});
    if (const auto* ok = std::get_if<MatchingAllocation>(&outcome)) {
      ++successes;
      REQUIRE(verify_s_matching(threshold_graph(inst, tau), quotas, ok->matching).ok);
      for (const auto& [i, g] : ok->matching.edges()) REQUIRE(inst.utility(i, g) >= tau);
      const auto values = bundle_values(inst, ok->allocation);
      for (std::size_t i = 0; i < n; ++i)
        REQUIRE(values(i, i) >= static_cast<double>(quotas[i]) * tau * (1.0 - 1e-12));
    } else {
      const auto& w = std::get<NoSaturatingMatching>(outcome).witness;
      REQUIRE(neighborhood_size(threshold_graph(inst, tau), w.agents) < w.demand);
    }
  }
  CHECK(successes > 0);
}

TEST_CASE("threshold graph") {
  const Instance inst({1.0, 1.0}, UtilityMatrix({{0.2, 0.5, 0.9}, {0.5, 0.49, 0.0}}));
  const auto g = threshold_graph(inst, 0.5);
  CHECK(g.adjacency() == std::vector<Order>{{1, 2}, {0}});
}

TEST_CASE("two-agent threshold rule") {
  const Instance inst({1.0, 3.0}, UtilityMatrix({{0.5, 0.5, 0.5, 0.5}, {0.05, 0.5, 0.9, 0.1}}));
  const auto result = two_agent_threshold(inst, Distribution::uniform());
  CHECK(result.probability == 0.125);
  CHECK(result.tau == 0.125);
  CHECK(result.allocation.bundle(0) == Order{0, 3});
  CHECK(result.allocation.bundle(1) == Order{1, 2});

  const Instance high({1.0, 3.0}, UtilityMatrix({{0.5, 0.5}, {0.6, 0.7}}));
  CHECK(two_agent_threshold(high, Distribution::uniform()).allocation.bundle(0).empty());

  const Instance equal({1.0, 1.0}, UtilityMatrix(std::vector<std::vector<double>>{{0.5}, {0.5}}));
  CHECK(two_agent_threshold(equal, Distribution::uniform()).probability ==
        doctest::Approx(0.5 / (2.0 * std::sqrt(2.0))).epsilon(1e-15));
  const auto lin = Distribution::linear(0.5);
  const auto r1 = two_agent_threshold(equal, lin);
  CHECK(r1.probability == doctest::Approx(0.5 * (7.0 / 12.0) / (2.0 * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(lin.cdf(r1.tau) == doctest::Approx(r1.probability).epsilon(1e-12));

  CHECK_THROWS_AS(two_agent_threshold(Instance({1.0, 1.0, 1.0}, UtilityMatrix(3, 2, 0.5)), Distribution::uniform()),
                  InputError);
  CHECK_THROWS_AS(two_agent_threshold(Instance({3.0, 1.0}, UtilityMatrix(2, 2, 0.5)), Distribution::uniform()),
                  InputError);
}

TEST_CASE("two-agent threshold splits exactly at tau") {
  SeedStream rng(313);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = pick(rng, 1, 50);
    const double r = rng.uniform(1.0, 200.0);
    const Instance inst({1.0, r}, wfd::testing::random_utilities(rng, 2, m));
    const auto result = two_agent_threshold(inst, Distribution::uniform());
    for (std::size_t g : result.allocation.bundle(0)) REQUIRE(inst.utility(1, g) < result.tau);
    for (std::size_t g : result.allocation.bundle(1)) REQUIRE(inst.utility(1, g) >= result.tau);
  }
}
