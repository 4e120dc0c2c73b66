#include "wfd/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wfd {

UtilityMatrix::UtilityMatrix(const std::vector<std::vector<double>>& rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("utility matrix rows have unequal lengths");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Instance::Instance(std::vector<double> weights, UtilityMatrix utilities)
    : weights_(std::move(weights)), utilities_(std::move(utilities)) {
  if (weights_.empty()) throw InputError("instance needs at least one agent");
  if (utilities_.rows() != weights_.size())
    throw InputError("utility matrix has " + std::to_string(utilities_.rows()) +
                     " rows but there are " + std::to_string(weights_.size()) + " weights");
  if (utilities_.cols() == 0) throw InputError("instance needs at least one item");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InputError("weights must be finite and > 0");
  }
  for (double u : utilities_.data()) {
    if (!(u >= 0.0 && u <= 1.0)) throw InputError("utilities must lie in [0,1]");
  }
  total_weight_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  auto [lo, hi] = std::minmax_element(weights_.begin(), weights_.end());
  min_weight_ = *lo;
  max_weight_ = *hi;
  total_values_.resize(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    double sum = 0.0;
    for (double u : utilities_.row(i)) sum += u;
    total_values_[i] = sum;
  }
}

double Instance::two_agent_ratio() const {
  if (agents() != 2) throw InputError("weight ratio r is only defined for two agents");
  return weights_[1] / weights_[0];
}

Instance Instance::with_weights(std::vector<double> weights) const {
  return Instance(std::move(weights), utilities_);
}

Allocation::Allocation(std::vector<std::vector<std::size_t>> bundles) : bundles_(std::move(bundles)) {
  for (auto& b : bundles_) std::sort(b.begin(), b.end());
}

Allocation Allocation::from_owners(std::span<const std::size_t> owners, std::size_t agents) {
  std::vector<std::vector<std::size_t>> bundles(agents);
  for (std::size_t g = 0; g < owners.size(); ++g) {
    if (owners[g] >= agents) throw InputError("owner index out of range");
    bundles[owners[g]].push_back(g);
  }
  Allocation a;
  a.bundles_ = std::move(bundles);
  return a;
}

std::vector<std::size_t> Allocation::owners(std::size_t items) const {
  std::vector<std::size_t> owner(items, agents());
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    for (std::size_t g : bundles_[i]) {
      if (g >= items || owner[g] != agents()) throw InputError("allocation is not a partition");
      owner[g] = i;
    }
  }
  for (std::size_t o : owner) {
    if (o == agents()) throw InputError("allocation is not a partition");
  }
  return owner;
}

void Allocation::validate(const Instance& instance) const {
  if (bundles_.size() != instance.agents())
    throw InputError("allocation has " + std::to_string(bundles_.size()) + " bundles but instance has " +
                     std::to_string(instance.agents()) + " agents");
  const std::size_t m = instance.items();
  std::vector<bool> seen(m, false);
  std::size_t count = 0;
  for (const auto& b : bundles_) {
    for (std::size_t g : b) {
      if (g >= m) throw InputError("item index " + std::to_string(g) + " out of range");
      if (seen[g]) throw InputError("item " + std::to_string(g) + " appears in more than one bundle");
      seen[g] = true;
      ++count;
    }
  }
  if (count != m) {
    auto missing = std::find(seen.begin(), seen.end(), false) - seen.begin();
    throw InputError("item " + std::to_string(missing) + " is not allocated");
  }
}

UtilityMatrix bundle_values(const Instance& instance, const Allocation& allocation) {
  allocation.validate(instance);
  const std::size_t n = instance.agents();
  UtilityMatrix values(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto u = instance.utilities_of(i);
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t g : allocation.bundle(j)) sum += u[g];
      values(i, j) = sum;
    }
  }
  return values;
}

std::vector<std::pair<std::size_t, std::size_t>> EnvyReport::envious_pairs(double tolerance) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < agents_; ++i)
    for (std::size_t j = 0; j < agents_; ++j)
      if (i != j && gap(i, j) < -tolerance) out.emplace_back(i, j);
  return out;
}

namespace detail {

double proportional_share(const Instance& instance, std::size_t i) {
  return instance.weight(i) / instance.total_weight() * instance.total_value(i);
}

bool wef_holds(const Instance& instance, const UtilityMatrix& values, double tolerance) {
  const std::size_t n = instance.agents();
  for (std::size_t i = 0; i < n; ++i) {
    const double own = values(i, i) / instance.weight(i) + tolerance;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && !(own >= values(i, j) / instance.weight(j))) return false;
    }
  }
  return true;
}

bool wprop_holds(const Instance& instance, const UtilityMatrix& values, double tolerance) {
  for (std::size_t i = 0; i < instance.agents(); ++i) {
    if (!(values(i, i) + tolerance >= proportional_share(instance, i))) return false;
  }
  return true;
}

}  // namespace detail

namespace {

EnvyReport fill_gaps(const Instance& instance, const UtilityMatrix& values) {
  const std::size_t n = instance.agents();
  EnvyReport report(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        report.set_gap(i, j, values(i, i) / instance.weight(i) - values(i, j) / instance.weight(j));
  return report;
}

}  // namespace

EnvyCheck is_wef(const Instance& instance, const Allocation& allocation, double tolerance) {
  const auto values = bundle_values(instance, allocation);
  EnvyCheck check{true, fill_gaps(instance, values), {}};
  const std::size_t n = instance.agents();
  for (std::size_t i = 0; i < n; ++i) {
    const double own = values(i, i) / instance.weight(i) + tolerance;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && !(own >= values(i, j) / instance.weight(j))) check.violations.emplace_back(i, j);
    }
  }
  check.holds = check.violations.empty();
  return check;
}

EnvyCheck is_wef1(const Instance& instance, const Allocation& allocation, double tolerance) {
  const auto values = bundle_values(instance, allocation);
  EnvyCheck check{true, fill_gaps(instance, values), {}};
  const std::size_t n = instance.agents();
  for (std::size_t i = 0; i < n; ++i) {
    auto u = instance.utilities_of(i);
    const double own = values(i, i) / instance.weight(i) + tolerance;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& bundle = allocation.bundle(j);
      if (j == i || bundle.empty()) continue;
      std::size_t best = bundle.front();
      for (std::size_t g : bundle)
        if (u[g] > u[best]) best = g;
      double rest = 0.0;
      for (std::size_t g : bundle)
        if (g != best) rest += u[g];
      if (own >= rest / instance.weight(j)) {
        check.report.set_wef1_witness(i, j, best);
      } else {
        check.violations.emplace_back(i, j);
      }
    }
  }
  check.holds = check.violations.empty();
  return check;
}

ProportionalityCheck is_wprop(const Instance& instance, const Allocation& allocation, double tolerance) {
  const auto values = bundle_values(instance, allocation);
  ProportionalityCheck check;
  check.shortfall.resize(instance.agents());
  for (std::size_t i = 0; i < instance.agents(); ++i) {
    const double share = detail::proportional_share(instance, i);
    check.shortfall[i] = share - values(i, i);
    if (!(values(i, i) + tolerance >= share)) check.violators.push_back(i);
  }
  check.holds = check.violators.empty();
  return check;
}

}  // namespace wfd
