#include "wfd/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wfd {

PickingTrace::PickingTrace(std::size_t agents, std::vector<std::size_t> picker, std::vector<std::size_t> item)
    : picker_(std::move(picker)), item_(std::move(item)), steps_of_(agents) {
  if (picker_.size() != item_.size()) throw std::invalid_argument("trace columns differ in length");
  for (std::size_t s = 0; s < picker_.size(); ++s) {
    if (picker_[s] >= agents) throw std::invalid_argument("trace names an unknown agent");
    steps_of_[picker_[s]].push_back(s + 1);
  }
}

std::size_t PickingTrace::picks_through(std::size_t i, std::size_t s) const {
  const auto& steps = steps_of_.at(i);
  return static_cast<std::size_t>(std::upper_bound(steps.begin(), steps.end(), s) - steps.begin());
}

std::size_t PickingTrace::pick_step(std::size_t i, std::size_t k) const {
  if (k == 0) return 0;
  return steps_of_.at(i).at(k - 1);
}

std::size_t PickingTrace::picked_item(std::size_t i, std::size_t k) const {
  return item_.at(pick_step(i, k) - 1);
}

std::vector<std::size_t> PickingTrace::inter_pick_counts(std::size_t i, std::size_t j) const {
  const std::size_t count = pick_count(i);
  std::vector<std::size_t> tau(count, 0);
  if (count == 0) return tau;
  const std::size_t m = steps();
  auto next_step = [&](std::size_t k) { return k < count ? pick_step(i, k + 1) : m + 1; };

  const std::size_t before_second = picks_through(j, next_step(1) - 1);
  tau[0] = before_second == 0 ? 0 : before_second - 1;
  for (std::size_t k = 2; k <= count; ++k) {
    tau[k - 1] = picks_through(j, next_step(k) - 1) - picks_through(j, pick_step(i, k));
  }
  return tau;
}

namespace {

// Item indices sorted by decreasing utility, lowest index first on ties.
std::vector<std::vector<std::size_t>> preference_orders(const Instance& instance) {
  std::vector<std::vector<std::size_t>> orders(instance.agents());
  for (std::size_t i = 0; i < instance.agents(); ++i) {
    auto u = instance.utilities_of(i);
    auto& order = orders[i];
    order.resize(instance.items());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });
  }
  return orders;
}

// Runs a picking sequence where `next_picker(counts)` chooses the agent for
// each step.
template <class ChoosePicker>
PickingResult run_picking(const Instance& instance, ChoosePicker&& next_picker) {
  const std::size_t n = instance.agents();
  const std::size_t m = instance.items();
  const auto orders = preference_orders(instance);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::size_t> counts(n, 0);
  std::vector<bool> taken(m, false);
  std::vector<std::size_t> picker;
  std::vector<std::size_t> item;
  picker.reserve(m);
  item.reserve(m);
  std::vector<std::size_t> owners(m);

  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t i = next_picker(counts, step);
    auto& c = cursor[i];
    while (taken[orders[i][c]]) ++c;
    const std::size_t g = orders[i][c];
    taken[g] = true;
    owners[g] = i;
    ++counts[i];
    picker.push_back(i);
    item.push_back(g);
  }
  return {Allocation::from_owners(owners, n), PickingTrace(n, std::move(picker), std::move(item))};
}

}  // namespace

PickingResult weighted_picking_sequence(const Instance& instance) {
  const auto& w = instance.weights();
  return run_picking(instance, [&](const std::vector<std::size_t>& counts, std::size_t) {
    std::size_t best = 0;
    double best_ratio = static_cast<double>(counts[0]) / w[0];
    for (std::size_t i = 1; i < counts.size(); ++i) {
      const double ratio = static_cast<double>(counts[i]) / w[i];
      if (ratio < best_ratio) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  });
}

Allocation round_robin(const Instance& instance) {
  const std::size_t n = instance.agents();
  return run_picking(instance, [n](const std::vector<std::size_t>&, std::size_t step) { return step % n; })
      .allocation;
}

WpropParameters wprop_parameters(const Instance& instance, DistMeta meta, double epsilon,
                                 const MatchingOverrides& overrides) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(meta.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(meta.mu > 0.0 && meta.mu < 1.0)) throw std::invalid_argument("mu must lie in (0, 1)");

  const double n = static_cast<double>(instance.agents());
  const double m = static_cast<double>(instance.items());
  WpropParameters params;
  params.weight_ratio = instance.weight_ratio();
  params.canonical = !overrides.tau && !overrides.quotas;

  if (overrides.tau) {
    if (!(*overrides.tau > 0.0 && *overrides.tau <= 1.0))
      throw std::invalid_argument("tau override must lie in (0, 1]");
    params.tau = *overrides.tau;
  } else {
    params.tau = 1.0 - 8.0 * (params.weight_ratio + 1.0) * std::log(m) / (meta.alpha * n);
  }
  if (!(params.tau > 0.0))
    throw ThresholdInvalid("threshold tau = " + std::to_string(params.tau) +
                           " is not positive; too few agents for the default constants");

  params.delta = (1.0 + epsilon / (1.0 + epsilon) * (1.0 - meta.mu) / meta.mu) * params.tau - 1.0;

  if (overrides.quotas) {
    if (overrides.quotas->size() != instance.agents())
      throw std::invalid_argument("quota override has the wrong length");
    for (std::size_t s : *overrides.quotas)
      if (s == 0) throw std::invalid_argument("quota overrides must be positive");
    params.quotas = *overrides.quotas;
    return params;
  }
  if (!(params.delta > 0.0)) {
    const double tau_floor = 1.0 / (1.0 + epsilon / (1.0 + epsilon) * (1.0 - meta.mu) / meta.mu);
    throw ThresholdInvalid("slack delta = " + std::to_string(params.delta) + " is not positive; tau must exceed " +
                           std::to_string(tau_floor) + " for this epsilon and mean");
  }
  const double scale = (1.0 + params.delta) * meta.mu * m / params.tau / instance.total_weight();
  params.quotas.resize(instance.agents());
  for (std::size_t i = 0; i < instance.agents(); ++i) {
    params.quotas[i] = static_cast<std::size_t>(std::ceil(scale * instance.weight(i)));
  }
  return params;
}

BipartiteGraph threshold_graph(const Instance& instance, double tau) {
  BipartiteGraph graph(instance.agents(), instance.items());
  for (std::size_t i = 0; i < instance.agents(); ++i) {
    auto u = instance.utilities_of(i);
    for (std::size_t g = 0; g < u.size(); ++g)
      if (u[g] >= tau) graph.add_edge(i, g);
  }
  return graph;
}

MatchingOutcome matching_based_wprop(const Instance& instance, DistMeta meta, double epsilon,
                                     const MatchingOverrides& overrides) {
  auto params = wprop_parameters(instance, meta, epsilon, overrides);
  const auto graph = threshold_graph(instance, params.tau);

  const std::size_t demand = std::accumulate(params.quotas.begin(), params.quotas.end(), std::size_t{0});
  if (demand > instance.items()) {
    DeficientSet everyone;
    everyone.agents.resize(instance.agents());
    std::iota(everyone.agents.begin(), everyone.agents.end(), std::size_t{0});
    everyone.demand = demand;
    std::vector<bool> hit(instance.items(), false);
    for (std::size_t i = 0; i < instance.agents(); ++i)
      for (std::size_t g : graph.neighbors(i)) hit[g] = true;
    for (std::size_t g = 0; g < hit.size(); ++g)
      if (hit[g]) everyone.neighborhood.push_back(g);
    return NoSaturatingMatching{std::move(params), std::move(everyone)};
  }

  auto result = find_left_saturating_s_matching(graph, params.quotas);
  if (auto* deficient = std::get_if<DeficientSet>(&result))
    return NoSaturatingMatching{std::move(params), std::move(*deficient)};

  auto& matching = std::get<SMatching>(result);
  std::vector<std::size_t> owners(instance.items(), 0);
  for (std::size_t g = 0; g < owners.size(); ++g)
    if (matching.owner[g]) owners[g] = *matching.owner[g];
  return MatchingAllocation{Allocation::from_owners(owners, instance.agents()), std::move(params),
                            std::move(matching)};
}

ThresholdAllocation two_agent_threshold(const Instance& instance, const Distribution& dist) {
  if (instance.agents() != 2) throw InputError("two-agent threshold rule needs exactly two agents");
  const double r = instance.two_agent_ratio();
  if (!(r >= 1.0)) throw InputError("agent 1 must carry the larger weight (r = w_2/w_1 >= 1)");
  ThresholdAllocation out;
  out.probability = dist.alpha() * dist.mean() / (2.0 * std::sqrt(r + 1.0));
  if (!(out.probability > 0.0 && out.probability < 1.0))
    throw DistributionError("threshold probability p must lie in (0, 1)");
  out.tau = quantile(dist, out.probability);
  auto u = instance.utilities_of(1);
  std::vector<std::size_t> owners(instance.items());
  for (std::size_t g = 0; g < owners.size(); ++g) owners[g] = u[g] < out.tau ? 0 : 1;
  out.allocation = Allocation::from_owners(owners, 2);
  return out;
}

}  // namespace wfd
