#pragma once

// PDF-bounded utility distributions on [0,1] and the samplers built on
// their inverse CDFs.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wfd/core.hpp"
#include "wfd/rng.hpp"

namespace wfd {

class DistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A non-atomic distribution on [0,1] whose density stays within
/// [alpha, beta]. Two families are built in:
///
///   uniform      f(x) = 1
///   linear(a)    f(x) = a + 2(1-a)x,  a in (0, 2)
///
/// Both have closed-form CDF and inverse CDF.
class Distribution {
 public:
  enum class Family { uniform, linear };

  static Distribution uniform();
  static Distribution linear(double a);

  /// Parses "uniform" or "linear:a=<value>".
  static Distribution parse(std::string_view text);

  Family family() const { return family_; }
  /// Slope parameter a of the linear family (1 for uniform).
  double parameter() const { return a_; }
  /// Canonical textual form, accepted by parse().
  std::string name() const;

  /// Lower density bound.
  double alpha() const;
  /// Upper density bound.
  double beta() const;
  /// Exact mean.
  double mean() const;

  double density(double x) const;
  double cdf(double x) const;
  /// Closed-form F^{-1}(p) for p in [0,1].
  double inverse_cdf(double p) const;

  bool operator==(const Distribution&) const = default;

 private:
  Distribution(Family family, double a) : family_(family), a_(a) {}

  Family family_;
  double a_;
};

/// tau with F(tau) = p, for p strictly inside (0,1). Uses the closed-form
/// inverse; see bisect_quantile for the generic route.
double quantile(const Distribution& dist, double p);

/// Quantile by bisection on the CDF, to an interval width of `tolerance`
/// or `max_iterations` halvings, whichever comes first.
double bisect_quantile(const Distribution& dist, double p, double tolerance = 1e-12,
                       int max_iterations = 200);

/// n x m matrix of i.i.d. draws from `dist`, row by row, one uniform per entry.
UtilityMatrix sample_matrix(const Distribution& dist, std::size_t n, std::size_t m, SeedStream& stream);

/// One draw from dist conditioned on [0, c]: F^{-1}(U * F(c)).
double sample_conditional_below(const Distribution& dist, double c, SeedStream& stream);

/// Maximum of k i.i.d. draws from dist conditioned on [0, c], via the
/// order-statistic transform F^{-1}(F(c) * U^{1/k}) using a single uniform.
double sample_max_of_k(const Distribution& dist, double c, std::size_t k, SeedStream& stream);

}  // namespace wfd
