#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wfd {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// z for a two-sided 95% interval.
inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion. Requires trials >= 1.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

/// Asymptotic Kolmogorov survival function Q_KS(lambda) = Pr[K > lambda].
double kolmogorov_survival(double lambda);

struct KsResult {
  double statistic = 0.0;  // sup |F1 - F2|
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test. Inputs need not be sorted.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// One-sample KS test of `sample` against a continuous CDF.
template <class Cdf>
KsResult ks_one_sample(std::vector<double> sample, Cdf&& cdf);

namespace detail {
KsResult ks_finish(double statistic, double effective_n);
void sort_sample(std::vector<double>& v);
}  // namespace detail

template <class Cdf>
KsResult ks_one_sample(std::vector<double> sample, Cdf&& cdf) {
  detail::sort_sample(sample);
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const double f = cdf(sample[k]);
    const double lo = f - static_cast<double>(k) / n;
    const double hi = static_cast<double>(k + 1) / n - f;
    if (lo > d) d = lo;
    if (hi > d) d = hi;
  }
  return detail::ks_finish(d, n);
}

}  // namespace wfd
