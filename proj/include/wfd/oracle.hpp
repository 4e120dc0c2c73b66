#pragma once

// Ground truth for existence questions: exhaustive search over all n^m
// allocations of tiny instances, and polynomial-time certificates that no
// fair allocation exists. Certificates are sound but not complete.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "wfd/core.hpp"

namespace wfd {

enum class Notion { wef, wef1, wprop };

Notion parse_notion(std::string_view text);
std::string_view to_string(Notion notion);

/// Thrown when n^m exceeds the exhaustive-search budget.
class InstanceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::uint64_t kMaxEnumeration = 10'000'000;

struct SearchOptions {
  std::size_t threads = 1;
  double tolerance = 0.0;
  /// Round utilities to multiples of 2^-30 first, so bundle sums are exact.
  bool quantize = false;
};

struct ExistenceResult {
  bool exists = false;
  /// Lexicographically smallest satisfying allocation, ordering allocations
  /// by the owner sequence (owner of item 0, owner of item 1, ...).
  std::optional<Allocation> witness;
  std::uint64_t examined = 0;  // allocations evaluated
};

/// Enumerates every allocation. The result is independent of `threads`.
ExistenceResult exists_fair_allocation(const Instance& instance, Notion notion,
                                       const SearchOptions& options = {});

/// Utilities rounded to the nearest multiple of 2^-bits.
Instance quantize_utilities(const Instance& instance, int bits = 30);

struct CountingCertificate {
  bool certified = false;
  std::size_t items = 0;
  /// Sum over agents of the fewest items that can reach the agent's share.
  std::size_t required_items = 0;
  std::vector<std::size_t> per_agent_minimum;
};

/// Each item is worth at most 1 to anyone, so agent i needs at least
/// ceil((w_i/W) u_i(M)) items, and at least one whenever that share is
/// positive. If these minima sum past m, no WPROP (hence no WEF)
/// allocation exists.
CountingCertificate wprop_counting_certificate(const Instance& instance);

struct TwoAgentCertificate {
  /// r * Y > u_2(M) - Y: no WEF/WPROP allocation exists.
  bool certified = false;
  /// The coarser condition r * Y > m.
  bool item_count_bound = false;
  /// Whether every u_1(g) > 0; without it neither condition certifies.
  bool first_agent_positive = false;
  double ratio = 0.0;      // r = w_2 / w_1
  double min_value = 0.0;  // Y = min_g u_2(g)
  double rest_value = 0.0; // u_2(M) - Y
};

/// With all of agent 0's utilities positive she must get an item in any
/// WEF allocation; the heavier agent 1 then values agent 0's bundle at
/// least Y, which outweighs what is left for her once r * Y exceeds it.
/// Needs n = 2 and w_2 >= w_1 (InputError otherwise).
TwoAgentCertificate two_agent_nonexistence_certificate(const Instance& instance);

}  // namespace wfd
