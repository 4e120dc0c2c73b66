#include "wfd/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

namespace wfd {

Notion parse_notion(std::string_view text) {
  if (text == "wef") return Notion::wef;
  if (text == "wef1") return Notion::wef1;
  if (text == "wprop") return Notion::wprop;
  throw InputError("unknown fairness notion '" + std::string(text) + "' (expected wef, wef1 or wprop)");
}

std::string_view to_string(Notion notion) {
  switch (notion) {
    case Notion::wef:
      return "wef";
    case Notion::wef1:
      return "wef1";
    case Notion::wprop:
      return "wprop";
  }
  return "?";
}

Instance quantize_utilities(const Instance& instance, int bits) {
  const double scale = std::ldexp(1.0, bits);
  UtilityMatrix u = instance.utilities();
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (auto& x : u.row(i)) x = std::clamp(std::nearbyint(x * scale) / scale, 0.0, 1.0);
  return Instance(instance.weights(), std::move(u));
}

namespace {

std::uint64_t enumeration_size(std::size_t n, std::size_t m) {
  std::uint64_t total = 1;
  for (std::size_t g = 0; g < m; ++g) {
    if (total > kMaxEnumeration / n) return std::numeric_limits<std::uint64_t>::max();
    total *= n;
  }
  return total;
}

class AllocationScanner {
 public:
  AllocationScanner(const Instance& instance, Notion notion, double tolerance)
      : instance_(instance),
        notion_(notion),
        tolerance_(tolerance),
        owners_(instance.items(), 0),
        values_(instance.agents(), instance.agents()) {}

  void seek(std::uint64_t index) {
    const std::size_t n = instance_.agents();
    for (std::size_t g = owners_.size(); g-- > 0;) {
      owners_[g] = static_cast<std::size_t>(index % n);
      index /= n;
    }
  }

  void advance() {
    const std::size_t n = instance_.agents();
    for (std::size_t g = owners_.size(); g-- > 0;) {
      if (++owners_[g] < n) return;
      owners_[g] = 0;
    }
  }

  bool satisfied() {
    if (notion_ == Notion::wef1) {
      return is_wef1(instance_, Allocation::from_owners(owners_, instance_.agents()), tolerance_).holds;
    }
    const std::size_t n = instance_.agents();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) values_(i, j) = 0.0;
    // Ascending item order per bundle, as in bundle_values().
    for (std::size_t g = 0; g < owners_.size(); ++g)
      for (std::size_t i = 0; i < n; ++i) values_(i, owners_[g]) += instance_.utility(i, g);
    return notion_ == Notion::wef ? detail::wef_holds(instance_, values_, tolerance_)
                                  : detail::wprop_holds(instance_, values_, tolerance_);
  }

  const std::vector<std::size_t>& owners() const { return owners_; }

 private:
  const Instance& instance_;
  Notion notion_;
  double tolerance_;
  std::vector<std::size_t> owners_;
  UtilityMatrix values_;
};

}  // namespace

ExistenceResult exists_fair_allocation(const Instance& input, Notion notion, const SearchOptions& options) {
  const std::uint64_t total = enumeration_size(input.agents(), input.items());
  if (total > kMaxEnumeration)
    throw InstanceTooLarge("exhaustive search over " + std::to_string(input.agents()) + "^" +
                           std::to_string(input.items()) + " allocations exceeds the limit of " +
                           std::to_string(kMaxEnumeration));
  const Instance instance = options.quantize ? quantize_utilities(input) : input;

  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> first_hit{kNone};
  auto scan = [&](std::uint64_t begin, std::uint64_t end) {
    if (begin >= end) return;
    AllocationScanner scanner(instance, notion, options.tolerance);
    scanner.seek(begin);
    for (std::uint64_t idx = begin; idx < end; ++idx, scanner.advance()) {
      if (idx > first_hit.load(std::memory_order_relaxed)) return;
      if (scanner.satisfied()) {
        std::uint64_t seen = first_hit.load();
        while (idx < seen && !first_hit.compare_exchange_weak(seen, idx)) {
        }
        return;
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min<std::uint64_t>(options.threads, total));
  if (threads == 1) {
    scan(0, total);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back(scan, t * chunk, std::min(total, (t + 1) * chunk));
  }

  ExistenceResult result;
  const std::uint64_t hit = first_hit.load();
  if (hit == kNone) {
    result.examined = total;
    return result;
  }
  AllocationScanner decoder(instance, notion, options.tolerance);
  decoder.seek(hit);
  result.exists = true;
  result.witness = Allocation::from_owners(decoder.owners(), instance.agents());
  result.examined = hit + 1;
  return result;
}

CountingCertificate wprop_counting_certificate(const Instance& instance) {
  CountingCertificate cert;
  cert.items = instance.items();
  cert.per_agent_minimum.resize(instance.agents());
  for (std::size_t i = 0; i < instance.agents(); ++i) {
    const double share = detail::proportional_share(instance, i);
    const std::size_t need = share > 0.0 ? std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(share))) : 0;
    cert.per_agent_minimum[i] = need;
    cert.required_items += need;
  }
  cert.certified = cert.required_items > cert.items;
  return cert;
}

TwoAgentCertificate two_agent_nonexistence_certificate(const Instance& instance) {
  if (instance.agents() != 2) throw InputError("two-agent certificate needs exactly two agents");
  TwoAgentCertificate cert;
  cert.ratio = instance.two_agent_ratio();
  if (!(cert.ratio >= 1.0)) throw InputError("agent 1 must carry the larger weight (r = w_2/w_1 >= 1)");
  auto u0 = instance.utilities_of(0);
  auto u1 = instance.utilities_of(1);
  cert.first_agent_positive = std::all_of(u0.begin(), u0.end(), [](double x) { return x > 0.0; });
  cert.min_value = *std::min_element(u1.begin(), u1.end());
  cert.rest_value = instance.total_value(1) - cert.min_value;
  const double scaled = cert.ratio * cert.min_value;
  cert.certified = cert.first_agent_positive && scaled > cert.rest_value;
  cert.item_count_bound = cert.first_agent_positive && scaled > static_cast<double>(instance.items());
  return cert;
}

}  // namespace wfd
