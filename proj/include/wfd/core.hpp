#pragma once

// Instances, allocations and the weighted fairness predicates (WEF, WEF1,
// WPROP) for additive utilities over indivisible goods.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wfd {

/// Thrown when an instance or allocation is malformed, or when the two do
/// not fit together.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Row-major n x m matrix; row i holds agent i's utilities.
class UtilityMatrix {
 public:
  UtilityMatrix() = default;
  UtilityMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  explicit UtilityMatrix(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t g) const { return data_[i * cols_ + g]; }
  double& operator()(std::size_t i, std::size_t g) { return data_[i * cols_ + g]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const UtilityMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A weighted fair-division instance: n agents with positive entitlements
/// and additive utilities in [0,1] over m items.
class Instance {
 public:
  Instance(std::vector<double> weights, UtilityMatrix utilities);

  std::size_t agents() const { return weights_.size(); }
  std::size_t items() const { return utilities_.cols(); }

  double utility(std::size_t i, std::size_t g) const { return utilities_(i, g); }
  std::span<const double> utilities_of(std::size_t i) const { return utilities_.row(i); }
  const UtilityMatrix& utilities() const { return utilities_; }

  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  double total_weight() const { return total_weight_; }
  double max_weight() const { return max_weight_; }
  double min_weight() const { return min_weight_; }
  /// C = w_max / w_min.
  double weight_ratio() const { return max_weight_ / min_weight_; }
  /// r = w_2 / w_1; only defined for two agents.
  double two_agent_ratio() const;

  /// u_i(M), summed in ascending item order.
  double total_value(std::size_t i) const { return total_values_[i]; }

  Instance with_weights(std::vector<double> weights) const;

 private:
  std::vector<double> weights_;
  UtilityMatrix utilities_;
  std::vector<double> total_values_;
  double total_weight_ = 0.0;
  double max_weight_ = 0.0;
  double min_weight_ = 0.0;
};

/// A partition of the items into one bundle per agent. Bundles are kept in
/// ascending item order.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<std::vector<std::size_t>> bundles);

  /// Builds an allocation from owner[g] = agent receiving item g.
  static Allocation from_owners(std::span<const std::size_t> owners, std::size_t agents);

  std::size_t agents() const { return bundles_.size(); }
  const std::vector<std::size_t>& bundle(std::size_t i) const { return bundles_[i]; }
  const std::vector<std::vector<std::size_t>>& bundles() const { return bundles_; }

  /// owner[g] for every item; requires a valid partition of `items` items.
  std::vector<std::size_t> owners(std::size_t items) const;

  /// Throws InputError unless this is a partition of [0, instance.items())
  /// into instance.agents() bundles.
  void validate(const Instance& instance) const;

  bool operator==(const Allocation&) const = default;

 private:
  std::vector<std::vector<std::size_t>> bundles_;
};

/// Value matrix V(i, j) = u_i(A_j), each entry summed in ascending item order.
UtilityMatrix bundle_values(const Instance& instance, const Allocation& allocation);

/// Per-ordered-pair envy diagnostics.
class EnvyReport {
 public:
  explicit EnvyReport(std::size_t agents)
      : agents_(agents), gaps_(agents * agents, 0.0), witnesses_(agents * agents) {}

  std::size_t agents() const { return agents_; }

  /// u_i(A_i)/w_i - u_i(A_j)/w_j.
  double gap(std::size_t i, std::size_t j) const { return gaps_[i * agents_ + j]; }
  void set_gap(std::size_t i, std::size_t j, double v) { gaps_[i * agents_ + j] = v; }

  /// An item g in A_j whose removal leaves i without weighted envy toward j.
  std::optional<std::size_t> wef1_witness(std::size_t i, std::size_t j) const {
    return witnesses_[i * agents_ + j];
  }
  void set_wef1_witness(std::size_t i, std::size_t j, std::optional<std::size_t> g) {
    witnesses_[i * agents_ + j] = g;
  }

  /// Ordered pairs (i, j) whose gap is below -tolerance.
  std::vector<std::pair<std::size_t, std::size_t>> envious_pairs(double tolerance = 0.0) const;

 private:
  std::size_t agents_;
  std::vector<double> gaps_;
  std::vector<std::optional<std::size_t>> witnesses_;
};

struct EnvyCheck {
  bool holds = false;
  EnvyReport report;
  /// Pairs (i, j) that violate the checked notion.
  std::vector<std::pair<std::size_t, std::size_t>> violations;
};

struct ProportionalityCheck {
  bool holds = false;
  /// (w_i/W) * u_i(M) - u_i(A_i); positive entries are deficits.
  std::vector<double> shortfall;
  std::vector<std::size_t> violators;
};

/// Weighted envy-freeness. Each comparison is u_i(A_i)/w_i + tolerance >=
/// u_i(A_j)/w_j; the default tolerance of zero is an exact floating compare.
EnvyCheck is_wef(const Instance& instance, const Allocation& allocation, double tolerance = 0.0);

/// Weighted envy-freeness up to one item. The witness for (i, j) is i's
/// most valued item in A_j (lowest index on ties), recorded only when its
/// removal actually clears the envy.
EnvyCheck is_wef1(const Instance& instance, const Allocation& allocation, double tolerance = 0.0);

/// Weighted proportionality: u_i(A_i) + tolerance >= (w_i/W) * u_i(M).
ProportionalityCheck is_wprop(const Instance& instance, const Allocation& allocation,
                              double tolerance = 0.0);

namespace detail {
// Predicate kernels on a precomputed bundle value matrix, shared with the
// exhaustive oracle so both paths evaluate identical floating expressions.
bool wef_holds(const Instance& instance, const UtilityMatrix& values, double tolerance);
bool wprop_holds(const Instance& instance, const UtilityMatrix& values, double tolerance);
double proportional_share(const Instance& instance, std::size_t i);
}  // namespace detail

}  // namespace wfd
