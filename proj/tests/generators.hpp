#pragma once

// Hand-rolled random generators for property tests. Every generator draws
// from a SeedStream so failures reproduce from the printed seed.

#include <cstddef>
#include <vector>

#include "wfd/core.hpp"
#include "wfd/matching.hpp"
#include "wfd/rng.hpp"

namespace wfd::testing {

inline std::size_t pick(SeedStream& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(rng.uniform_int(lo, hi));
}

inline std::vector<double> random_weights(SeedStream& rng, std::size_t n, double lo, double hi) {
  std::vector<double> w(n);
  for (auto& x : w) x = rng.uniform(lo, hi);
  return w;
}

inline UtilityMatrix random_utilities(SeedStream& rng, std::size_t n, std::size_t m) {
  UtilityMatrix u(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t g = 0; g < m; ++g) u(i, g) = rng.uniform();
  return u;
}

inline Instance random_instance(SeedStream& rng, std::size_t n, std::size_t m, double wlo = 1.0,
                                double whi = 10.0) {
  return Instance(random_weights(rng, n, wlo, whi), random_utilities(rng, n, m));
}

inline Allocation random_allocation(SeedStream& rng, std::size_t n, std::size_t m) {
  std::vector<std::size_t> owners(m);
  for (auto& o : owners) o = pick(rng, 0, n - 1);
  return Allocation::from_owners(owners, n);
}

inline BipartiteGraph random_graph(SeedStream& rng, std::size_t n, std::size_t m, double p) {
  BipartiteGraph g(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (rng.uniform() < p) g.add_edge(i, j);
  return g;
}

/// Positive quotas summing to at most m (m >= n).
inline std::vector<std::size_t> random_quotas(SeedStream& rng, std::size_t n, std::size_t m) {
  std::vector<std::size_t> s(n, 1);
  std::size_t spare = m - n;
  for (std::size_t i = 0; i < n && spare > 0; ++i) {
    const std::size_t extra = pick(rng, 0, std::min<std::size_t>(spare, 2));
    s[i] += extra;
    spare -= extra;
  }
  return s;
}

}  // namespace wfd::testing
