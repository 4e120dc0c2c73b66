#pragma once

// Allocation algorithms: the weighted picking sequence (with its full pick
// trace), plain round-robin, the threshold-graph matching algorithm for
// weighted proportionality, and the two-agent threshold rule.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "wfd/core.hpp"
#include "wfd/matching.hpp"
#include "wfd/sampling.hpp"

namespace wfd {

/// Step-by-step record of a picking sequence run. Steps are numbered
/// 1..m and pick counts k from 1, matching the usual presentation; all
/// agent and item indices are 0-based.
class PickingTrace {
 public:
  PickingTrace(std::size_t agents, std::vector<std::size_t> picker, std::vector<std::size_t> item);

  std::size_t agents() const { return steps_of_.size(); }
  std::size_t steps() const { return picker_.size(); }

  /// Agent who picked at step s (1-based).
  std::size_t picker_at(std::size_t s) const { return picker_.at(s - 1); }
  /// Item taken at step s (1-based).
  std::size_t item_at(std::size_t s) const { return item_.at(s - 1); }
  const std::vector<std::size_t>& order() const { return picker_; }
  const std::vector<std::size_t>& picked_items() const { return item_; }

  /// t_i(s): picks made by agent i in steps 1..s; s = 0 gives 0.
  std::size_t picks_through(std::size_t i, std::size_t s) const;
  /// t_i(m).
  std::size_t pick_count(std::size_t i) const { return steps_of_[i].size(); }
  /// s^i(k): the step of agent i's k-th pick; s^i(0) = 0.
  std::size_t pick_step(std::size_t i, std::size_t k) const;
  /// g^i_k: the item of agent i's k-th pick (k >= 1).
  std::size_t picked_item(std::size_t i, std::size_t k) const;

  /// tau_1 .. tau_{t_i(m)} for the ordered pair (i, j): the number of picks
  /// by j between consecutive picks of i. Conventions:
  ///  - tau_1 counts j's picks before step s^i(2), minus one for j's first
  ///    pick g^j_1 (which may come before or after g^i_1); it is 0 if j
  ///    never picks in that window.
  ///  - tau_k for k >= 2 counts j's picks strictly between s^i(k) and
  ///    s^i(k+1), with s^i(t_i(m)+1) taken as m+1.
  /// Empty if i never picks.
  std::vector<std::size_t> inter_pick_counts(std::size_t i, std::size_t j) const;

 private:
  std::vector<std::size_t> picker_;
  std::vector<std::size_t> item_;
  std::vector<std::vector<std::size_t>> steps_of_;  // 1-based steps per agent
};

struct PickingResult {
  Allocation allocation;
  PickingTrace trace;
};

/// Each step, the agent minimizing t_i / w_i (lowest index on ties) takes
/// her most valued remaining item (lowest index on ties).
PickingResult weighted_picking_sequence(const Instance& instance);

/// Agents take turns 0, 1, ..., n-1, 0, ... each taking her most valued
/// remaining item (lowest index on ties). Weights are ignored.
Allocation round_robin(const Instance& instance);

/// (alpha, mu) of the utility distribution, supplied by the caller.
struct DistMeta {
  double alpha = 1.0;
  double mu = 0.5;
  static DistMeta of(const Distribution& d) { return {d.alpha(), d.mean()}; }
};

/// Thrown when the threshold or slack computed from the asymptotic
/// constants is not positive for this instance size.
class ThresholdInvalid : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct MatchingOverrides {
  std::optional<double> tau;
  std::optional<std::vector<std::size_t>> quotas;
};

struct WpropParameters {
  double weight_ratio = 1.0;  // C
  double tau = 0.0;
  double delta = 0.0;
  std::vector<std::size_t> quotas;
  /// False when tau or the quotas were overridden.
  bool canonical = true;
};

/// Threshold and quotas for the matching algorithm:
///   tau   = 1 - 8 (C + 1) ln m / (alpha n)
///   delta = (1 + (eps / (1 + eps)) (1 - mu) / mu) tau - 1
///   s_i   = ceil((1 + delta) (w_i / W) (mu m / tau))
/// Throws ThresholdInvalid if tau <= 0, or if delta <= 0 while the quotas
/// are derived from it; std::invalid_argument on bad eps/alpha/mu/overrides.
WpropParameters wprop_parameters(const Instance& instance, DistMeta meta, double epsilon,
                                 const MatchingOverrides& overrides = {});

/// G_{>= tau}: agent i adjacent to item g iff u_i(g) >= tau.
BipartiteGraph threshold_graph(const Instance& instance, double tau);

struct MatchingAllocation {
  Allocation allocation;
  WpropParameters parameters;
  SMatching matching;
};

struct NoSaturatingMatching {
  WpropParameters parameters;
  DeficientSet witness;
};

using MatchingOutcome = std::variant<MatchingAllocation, NoSaturatingMatching>;

/// Finds a left-saturating s-matching in G_{>= tau} and gives each agent
/// her matched items; unmatched items go to agent 0. If the quotas exceed
/// the item count, the witness is the whole agent set.
MatchingOutcome matching_based_wprop(const Instance& instance, DistMeta meta, double epsilon,
                                     const MatchingOverrides& overrides = {});

struct ThresholdAllocation {
  Allocation allocation;
  double probability = 0.0;  // p = alpha mu / (2 sqrt(r + 1))
  double tau = 0.0;          // F(tau) = p
};

/// Two agents, agent 1 (index 1) the heavier: items agent 1 values below tau
/// go to agent 0, the rest to agent 1.
ThresholdAllocation two_agent_threshold(const Instance& instance, const Distribution& dist);

}  // namespace wfd
