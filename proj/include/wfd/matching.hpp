#pragma once

// Bipartite graphs between agents (left) and items (right), and
// left-saturating s-matchings: left vertex i is matched exactly s_i times,
// every right vertex at most once.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wfd/rng.hpp"

namespace wfd {

class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t left, std::size_t right);
  /// Neighbor lists are sorted and deduplicated; throws std::invalid_argument
  /// on an out-of-range right index.
  BipartiteGraph(std::size_t right, std::vector<std::vector<std::size_t>> adjacency);

  std::size_t left_size() const { return adjacency_.size(); }
  std::size_t right_size() const { return right_; }
  std::size_t edge_count() const;

  /// Neighbors of left vertex i in ascending order.
  std::span<const std::size_t> neighbors(std::size_t i) const { return adjacency_[i]; }
  bool has_edge(std::size_t i, std::size_t j) const;

  /// Appends edge (i, j). Callers adding edges out of order must call
  /// normalize() before using the graph.
  void add_edge(std::size_t i, std::size_t j);
  void normalize();

  const std::vector<std::vector<std::size_t>>& adjacency() const { return adjacency_; }

 private:
  std::size_t right_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// A (partial) s-matching stored as owner[j] = left vertex matched to right
/// vertex j.
struct SMatching {
  std::vector<std::optional<std::size_t>> owner;

  std::size_t size() const;
  /// Matched (left, right) pairs ordered by right vertex.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  /// Right vertices matched to each left vertex, ascending.
  std::vector<std::vector<std::size_t>> by_left(std::size_t left) const;
};

/// Hall violator: a set Y of left vertices whose neighborhood is smaller
/// than its total quota, so no left-saturating s-matching exists.
struct DeficientSet {
  std::vector<std::size_t> agents;        // Y, ascending
  std::vector<std::size_t> neighborhood;  // N_G(Y), ascending
  std::size_t demand = 0;                 // sum of s_i over Y
};

using SMatchingResult = std::variant<SMatching, DeficientSet>;

/// Finds a left-saturating s-matching by expanding left vertex i into s_i
/// copies and running BFS augmenting paths from each copy in order, with
/// neighbors tried in ascending index. If some copy cannot be augmented, the
/// left vertices reached by the failed alternating search form the returned
/// DeficientSet.
///
/// Throws std::invalid_argument if quotas.size() != left_size(), some quota
/// is zero, or the quotas sum past right_size().
SMatchingResult find_left_saturating_s_matching(const BipartiteGraph& graph,
                                                std::span<const std::size_t> quotas);

/// Every edge present independently with probability p; edges are decided
/// row by row with one uniform each.
BipartiteGraph random_bipartite(std::size_t left, std::size_t right, double p, SeedStream& stream);

struct MatchingVerdict {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Checks that `matching` is an s-matching of `graph` that saturates every
/// left vertex exactly.
MatchingVerdict verify_s_matching(const BipartiteGraph& graph, std::span<const std::size_t> quotas,
                                  const SMatching& matching);
/// Same check on a raw edge list (left, right), which can also express a
/// right vertex used twice.
MatchingVerdict verify_s_matching(const BipartiteGraph& graph, std::span<const std::size_t> quotas,
                                  std::span<const std::pair<std::size_t, std::size_t>> edges);

/// |N_G(Y)|.
std::size_t neighborhood_size(const BipartiteGraph& graph, std::span<const std::size_t> subset);

}  // namespace wfd
