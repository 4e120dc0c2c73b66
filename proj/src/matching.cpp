#include "wfd/matching.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wfd {

BipartiteGraph::BipartiteGraph(std::size_t left, std::size_t right) : right_(right), adjacency_(left) {}

BipartiteGraph::BipartiteGraph(std::size_t right, std::vector<std::vector<std::size_t>> adjacency)
    : right_(right), adjacency_(std::move(adjacency)) {
  for (const auto& row : adjacency_)
    for (std::size_t j : row)
      if (j >= right_) throw std::invalid_argument("neighbor index out of range");
  normalize();
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& row : adjacency_) total += row.size();
  return total;
}

bool BipartiteGraph::has_edge(std::size_t i, std::size_t j) const {
  const auto& row = adjacency_[i];
  return std::binary_search(row.begin(), row.end(), j);
}

void BipartiteGraph::add_edge(std::size_t i, std::size_t j) {
  if (i >= adjacency_.size() || j >= right_) throw std::invalid_argument("edge endpoint out of range");
  adjacency_[i].push_back(j);
}

void BipartiteGraph::normalize() {
  for (auto& row : adjacency_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

std::size_t SMatching::size() const {
  return static_cast<std::size_t>(
      std::count_if(owner.begin(), owner.end(), [](const auto& o) { return o.has_value(); }));
}

std::vector<std::pair<std::size_t, std::size_t>> SMatching::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < owner.size(); ++j)
    if (owner[j]) out.emplace_back(*owner[j], j);
  return out;
}

std::vector<std::vector<std::size_t>> SMatching::by_left(std::size_t left) const {
  std::vector<std::vector<std::size_t>> out(left);
  for (std::size_t j = 0; j < owner.size(); ++j)
    if (owner[j] && *owner[j] < left) out[*owner[j]].push_back(j);
  return out;
}

namespace {

constexpr std::size_t kFree = static_cast<std::size_t>(-1);

// Augmenting-path search over the copy-expanded graph. Copies of left
// vertex i are numbered contiguously and share i's neighbor list.
class CopyMatcher {
 public:
  CopyMatcher(const BipartiteGraph& graph, std::span<const std::size_t> quotas) : graph_(graph) {
    for (std::size_t i = 0; i < quotas.size(); ++i)
      for (std::size_t c = 0; c < quotas[i]; ++c) origin_.push_back(i);
    copy_match_.assign(origin_.size(), kFree);
    right_match_.assign(graph.right_size(), kFree);
    right_parent_.assign(graph.right_size(), kFree);
    right_stamp_.assign(graph.right_size(), 0);
    copy_stamp_.assign(origin_.size(), 0);
  }

  std::size_t copies() const { return origin_.size(); }

  // BFS from an unmatched copy; augments and returns true on success. On
  // failure, reached_ holds the copies in the alternating forest.
  bool augment(std::size_t root) {
    ++stamp_;
    reached_.clear();
    reached_.push_back(root);
    copy_stamp_[root] = stamp_;
    for (std::size_t head = 0; head < reached_.size(); ++head) {
      const std::size_t copy = reached_[head];
      for (std::size_t j : graph_.neighbors(origin_[copy])) {
        if (right_stamp_[j] == stamp_) continue;
        right_stamp_[j] = stamp_;
        right_parent_[j] = copy;
        const std::size_t mate = right_match_[j];
        if (mate == kFree) {
          flip(j);
          return true;
        }
        if (copy_stamp_[mate] != stamp_) {
          copy_stamp_[mate] = stamp_;
          reached_.push_back(mate);
        }
      }
    }
    return false;
  }

  const std::vector<std::size_t>& reached() const { return reached_; }
  std::size_t origin(std::size_t copy) const { return origin_[copy]; }

  SMatching result() const {
    SMatching m;
    m.owner.resize(right_match_.size());
    for (std::size_t j = 0; j < right_match_.size(); ++j)
      if (right_match_[j] != kFree) m.owner[j] = origin_[right_match_[j]];
    return m;
  }

 private:
  void flip(std::size_t j) {
    while (j != kFree) {
      const std::size_t copy = right_parent_[j];
      const std::size_t previous = copy_match_[copy];
      copy_match_[copy] = j;
      right_match_[j] = copy;
      j = previous;
    }
  }

  const BipartiteGraph& graph_;
  std::vector<std::size_t> origin_;
  std::vector<std::size_t> copy_match_;
  std::vector<std::size_t> right_match_;
  std::vector<std::size_t> right_parent_;
  std::vector<std::size_t> right_stamp_;
  std::vector<std::size_t> copy_stamp_;
  std::vector<std::size_t> reached_;
  std::size_t stamp_ = 0;
};

std::vector<std::size_t> neighborhood_of(const BipartiteGraph& graph, std::span<const std::size_t> subset) {
  std::vector<bool> hit(graph.right_size(), false);
  for (std::size_t i : subset)
    for (std::size_t j : graph.neighbors(i)) hit[j] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < hit.size(); ++j)
    if (hit[j]) out.push_back(j);
  return out;
}

}  // namespace

SMatchingResult find_left_saturating_s_matching(const BipartiteGraph& graph,
                                                std::span<const std::size_t> quotas) {
  if (quotas.size() != graph.left_size())
    throw std::invalid_argument("quota vector length " + std::to_string(quotas.size()) +
                                " does not match left side " + std::to_string(graph.left_size()));
  std::size_t total = 0;
  for (std::size_t s : quotas) {
    if (s == 0) throw std::invalid_argument("quotas must be positive");
    total += s;
  }
  if (total > graph.right_size())
    throw std::invalid_argument("quotas sum to " + std::to_string(total) + " but only " +
                                std::to_string(graph.right_size()) + " right vertices exist");

  CopyMatcher matcher(graph, quotas);
  for (std::size_t copy = 0; copy < matcher.copies(); ++copy) {
    if (matcher.augment(copy)) continue;

    std::vector<bool> in_set(graph.left_size(), false);
    for (std::size_t c : matcher.reached()) in_set[matcher.origin(c)] = true;
    DeficientSet witness;
    for (std::size_t i = 0; i < in_set.size(); ++i) {
      if (!in_set[i]) continue;
      witness.agents.push_back(i);
      witness.demand += quotas[i];
    }
    witness.neighborhood = neighborhood_of(graph, witness.agents);
    return witness;
  }
  return matcher.result();
}

BipartiteGraph random_bipartite(std::size_t left, std::size_t right, double p, SeedStream& stream) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  BipartiteGraph graph(left, right);
  for (std::size_t i = 0; i < left; ++i)
    for (std::size_t j = 0; j < right; ++j)
      if (stream.uniform() < p) graph.add_edge(i, j);
  return graph;
}

MatchingVerdict verify_s_matching(const BipartiteGraph& graph, std::span<const std::size_t> quotas,
                                  std::span<const std::pair<std::size_t, std::size_t>> edges) {
  if (quotas.size() != graph.left_size()) return {false, "quota vector has wrong length"};
  std::vector<std::size_t> load(graph.left_size(), 0);
  std::vector<bool> used(graph.right_size(), false);
  for (auto [i, j] : edges) {
    if (i >= graph.left_size() || j >= graph.right_size())
      return {false, "pair (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range"};
    if (!graph.has_edge(i, j))
      return {false, "pair (" + std::to_string(i) + ", " + std::to_string(j) + ") is not an edge"};
    if (used[j]) return {false, "right vertex " + std::to_string(j) + " matched more than once"};
    used[j] = true;
    ++load[i];
  }
  for (std::size_t i = 0; i < load.size(); ++i) {
    if (load[i] != quotas[i])
      return {false, "left vertex " + std::to_string(i) + " matched " + std::to_string(load[i]) +
                         " times, quota " + std::to_string(quotas[i])};
  }
  return {true, {}};
}

MatchingVerdict verify_s_matching(const BipartiteGraph& graph, std::span<const std::size_t> quotas,
                                  const SMatching& matching) {
  if (matching.owner.size() != graph.right_size()) return {false, "owner map has wrong length"};
  const auto pairs = matching.edges();
  return verify_s_matching(graph, quotas, pairs);
}

std::size_t neighborhood_size(const BipartiteGraph& graph, std::span<const std::size_t> subset) {
  return neighborhood_of(graph, subset).size();
}

}  // namespace wfd
