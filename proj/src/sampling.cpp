#include "wfd/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wfd {

Distribution Distribution::uniform() { return Distribution(Family::uniform, 1.0); }

Distribution Distribution::linear(double a) {
  if (!(a > 0.0 && a < 2.0)) throw DistributionError("linear density needs a in (0, 2)");
  return Distribution(Family::linear, a);
}

Distribution Distribution::parse(std::string_view text) {
  if (text == "uniform") return uniform();
  constexpr std::string_view prefix = "linear:a=";
  if (text.starts_with(prefix)) {
    std::string value(text.substr(prefix.size()));
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size())
      throw DistributionError("bad linear parameter in '" + std::string(text) + "'");
    return linear(a);
  }
  throw DistributionError("unknown distribution '" + std::string(text) +
                          "' (expected 'uniform' or 'linear:a=<x>')");
}

std::string Distribution::name() const {
  if (family_ == Family::uniform) return "uniform";
  std::ostringstream os;
  os.precision(17);
  os << "linear:a=" << a_;
  return os.str();
}

double Distribution::alpha() const { return std::min(a_, 2.0 - a_); }
double Distribution::beta() const { return std::max(a_, 2.0 - a_); }

double Distribution::mean() const {
  // integral of x (a + 2(1-a)x) over [0,1]
  return a_ / 2.0 + 2.0 * (1.0 - a_) / 3.0;
}

double Distribution::density(double x) const {
  if (x < 0.0 || x > 1.0) return 0.0;
  return a_ + 2.0 * (1.0 - a_) * x;
}

double Distribution::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return a_ * x + (1.0 - a_) * x * x;
}

double Distribution::inverse_cdf(double p) const {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  if (family_ == Family::uniform) return p;
  // Root of (1-a)x^2 + a x - p = 0 in the cancellation-free form.
  const double disc = a_ * a_ + 4.0 * (1.0 - a_) * p;
  return std::clamp(2.0 * p / (a_ + std::sqrt(disc)), 0.0, 1.0);
}

double quantile(const Distribution& dist, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DistributionError("quantile needs p in (0, 1)");
  return dist.inverse_cdf(p);
}

double bisect_quantile(const Distribution& dist, double p, double tolerance, int max_iterations) {
  if (!(p > 0.0 && p < 1.0)) throw DistributionError("quantile needs p in (0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < max_iterations && hi - lo > tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (dist.cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

UtilityMatrix sample_matrix(const Distribution& dist, std::size_t n, std::size_t m, SeedStream& stream) {
  if (n == 0 || m == 0) throw DistributionError("sample_matrix needs n, m >= 1");
  UtilityMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t g = 0; g < m; ++g) out(i, g) = dist.inverse_cdf(stream.uniform());
  return out;
}

double sample_conditional_below(const Distribution& dist, double c, SeedStream& stream) {
  if (!(c > 0.0 && c <= 1.0)) throw DistributionError("conditioning bound c must lie in (0, 1]");
  return std::min(c, dist.inverse_cdf(stream.uniform() * dist.cdf(c)));
}

double sample_max_of_k(const Distribution& dist, double c, std::size_t k, SeedStream& stream) {
  if (k == 0) throw DistributionError("max of k draws needs k >= 1");
  if (!(c > 0.0 && c <= 1.0)) throw DistributionError("conditioning bound c must lie in (0, 1]");
  const double v = stream.uniform();
  const double level = k == 1 ? v : std::pow(v, 1.0 / static_cast<double>(k));
  return std::min(c, dist.inverse_cdf(dist.cdf(c) * level));
}

}  // namespace wfd
