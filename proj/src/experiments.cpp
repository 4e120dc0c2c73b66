#include "wfd/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "wfd/algorithms.hpp"
#include "wfd/oracle.hpp"

namespace wfd {

std::vector<double> adversarial_weights(std::size_t n, double mu, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw ConfigError("adversarial weights need eps in (0, 1/2)");
  if (!(mu > 0.0 && mu < 1.0)) throw ConfigError("adversarial weights need mu in (0, 1)");
  const double delta = (1.0 - mu) * epsilon;
  const auto heavy = static_cast<std::size_t>(std::floor(delta * static_cast<double>(n) + 1e-9));
  if (heavy < 2)
    throw ConfigError("adversarial weights need floor(delta n) >= 2; n = " + std::to_string(n) +
                      " is too small for delta = " + std::to_string(delta));
  const std::size_t light = n - heavy;  // ceil((1 - delta) n)
  std::vector<double> w(n);
  std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(light), delta / static_cast<double>(light));
  std::fill(w.begin() + static_cast<std::ptrdiff_t>(light), w.end(), (1.0 - delta) / static_cast<double>(heavy));
  return w;
}

namespace {

// Parses "k1=v1,k2=v2" into a map of doubles.
std::map<std::string, double> parse_params(std::string_view text, std::string_view context) {
  std::map<std::string, double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected key=value in '" + std::string(context) + "'");
    std::string value(item.substr(eq + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size())
      throw ConfigError("bad number '" + value + "' in '" + std::string(context) + "'");
    out[std::string(item.substr(0, eq))] = v;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

double require(const std::map<std::string, double>& params, const std::string& key, std::string_view context) {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigError("missing '" + key + "' in '" + std::string(context) + "'");
  return it->second;
}

constexpr std::uint64_t kFixedWeightsStream = std::numeric_limits<std::uint64_t>::max();
constexpr std::size_t kExhaustiveItemLimit = 12;

}  // namespace

WeightScheme WeightScheme::parse(std::string_view text) {
  WeightScheme s;
  s.text_ = std::string(text);
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const auto params = parse_params(rest, text);
  static const std::map<std::string_view, std::vector<std::string_view>> allowed = {
      {"equal", {}}, {"uniform", {"lo", "hi", "fixed"}}, {"adversarial", {"eps"}}, {"ratio", {"r"}}};
  if (auto it = allowed.find(head); it != allowed.end()) {
    for (const auto& entry : params) {
      if (std::find(it->second.begin(), it->second.end(), entry.first) == it->second.end())
        throw ConfigError("unexpected parameter '" + entry.first + "' in weight scheme '" + std::string(text) + "'");
    }
  }
  if (head == "equal") {
    s.kind_ = Kind::equal;
  } else if (head == "uniform") {
    s.kind_ = Kind::uniform;
    s.a_ = require(params, "lo", text);
    s.b_ = require(params, "hi", text);
    if (!(s.a_ > 0.0 && s.b_ >= s.a_)) throw ConfigError("uniform weights need 0 < lo <= hi");
    auto f = params.find("fixed");
    s.fixed_ = f != params.end() && f->second != 0.0;
  } else if (head == "adversarial") {
    s.kind_ = Kind::adversarial;
    s.a_ = require(params, "eps", text);
    if (!(s.a_ > 0.0 && s.a_ < 0.5)) throw ConfigError("adversarial weights need eps in (0, 1/2)");
  } else if (head == "ratio") {
    s.kind_ = Kind::ratio;
    s.a_ = require(params, "r", text);
    if (!(s.a_ >= 1.0)) throw ConfigError("ratio weights need r >= 1");
  } else {
    throw ConfigError("unknown weight scheme '" + std::string(text) + "'");
  }
  return s;
}

std::vector<double> WeightScheme::make(std::size_t n, double mu, SeedStream& stream) const {
  switch (kind_) {
    case Kind::equal:
      return std::vector<double>(n, 1.0);
    case Kind::uniform: {
      std::vector<double> w(n);
      for (auto& x : w) x = stream.uniform(a_, b_);
      return w;
    }
    case Kind::adversarial:
      return adversarial_weights(n, mu, a_);
    case Kind::ratio:
      if (n != 2) throw ConfigError("ratio weights are only defined for two agents");
      return {1.0, a_};
  }
  return {};
}

Experiment parse_experiment(std::string_view text) {
  static const std::map<std::string_view, Experiment> names = {
      {"wef_picking", Experiment::wef_picking},
      {"wef1_picking", Experiment::wef1_picking},
      {"wprop_matching", Experiment::wprop_matching},
      {"wprop_certificate", Experiment::wprop_certificate},
      {"two_agent_threshold", Experiment::two_agent_threshold},
      {"two_agent_nonexistence", Experiment::two_agent_nonexistence},
  };
  auto it = names.find(text);
  if (it == names.end()) throw ConfigError("unknown experiment '" + std::string(text) + "'");
  return it->second;
}

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::wef_picking:
      return "wef_picking";
    case Experiment::wef1_picking:
      return "wef1_picking";
    case Experiment::wprop_matching:
      return "wprop_matching";
    case Experiment::wprop_certificate:
      return "wprop_certificate";
    case Experiment::two_agent_threshold:
      return "two_agent_threshold";
    case Experiment::two_agent_nonexistence:
      return "two_agent_nonexistence";
  }
  return "?";
}

void SweepConfig::validate() const {
  if (trials == 0) throw ConfigError("trials must be at least 1");
  if (n.empty()) throw ConfigError("grid axis 'n' is empty");
  if (m.empty() == m_multiplier.empty()) throw ConfigError("give exactly one of 'm' and 'm_multiplier'");
  if (dist.empty() || weights.empty() || epsilon.empty()) throw ConfigError("a grid axis is empty");
  for (std::size_t x : n)
    if (x == 0) throw ConfigError("n must be positive");
  for (std::size_t x : m)
    if (x == 0) throw ConfigError("m must be positive");
  for (double x : m_multiplier)
    if (!(x > 0.0)) throw ConfigError("m_multiplier must be positive");
  for (const auto& d : dist) {
    try {
      Distribution::parse(d);
    } catch (const DistributionError& e) {
      throw ConfigError(e.what());
    }
  }
  for (const auto& w : weights) WeightScheme::parse(w);
}

std::vector<Cell> SweepConfig::cells() const {
  validate();
  std::vector<Cell> out;
  const std::size_t m_axis = m.empty() ? m_multiplier.size() : m.size();
  for (std::size_t agents : n) {
    for (std::size_t k = 0; k < m_axis; ++k) {
      for (const auto& d : dist) {
        for (const auto& w : weights) {
          for (double e : epsilon) {
            Cell c;
            c.n = agents;
            c.dist = d;
            c.weights = w;
            c.epsilon = e;
            if (m.empty()) {
              const double mu = Distribution::parse(d).mean();
              c.m_multiplier = m_multiplier[k];
              c.m = static_cast<std::size_t>(
                  std::max(1.0, std::round(m_multiplier[k] * static_cast<double>(agents) / (1.0 - mu))));
            } else {
              c.m = m[k];
            }
            out.push_back(std::move(c));
          }
        }
      }
    }
  }
  return out;
}

Instance make_trial_instance(const Cell& cell, SeedStream& cell_stream, SeedStream& trial_stream) {
  const auto dist = Distribution::parse(cell.dist);
  const auto scheme = WeightScheme::parse(cell.weights);
  SeedStream weight_stream = scheme.fixed() ? cell_stream.fork(kFixedWeightsStream) : trial_stream.fork(0);
  auto weights = scheme.make(cell.n, dist.mean(), weight_stream);
  SeedStream utility_stream = trial_stream.fork(1);
  return Instance(std::move(weights), sample_matrix(dist, cell.n, cell.m, utility_stream));
}

TrialOutcome run_trial(const Cell& cell, Experiment experiment, std::optional<double> tau_override,
                       SeedStream& cell_stream, SeedStream& trial_stream) {
  TrialOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto instance = make_trial_instance(cell, cell_stream, trial_stream);
    const auto dist = Distribution::parse(cell.dist);
    switch (experiment) {
      case Experiment::wef_picking:
      case Experiment::wef1_picking: {
        const auto result = weighted_picking_sequence(instance);
        out.allocation_found = true;
        out.predicate_holds = experiment == Experiment::wef_picking
                                  ? is_wef(instance, result.allocation).holds
                                  : is_wef1(instance, result.allocation).holds;
        out.success = out.predicate_holds;
        break;
      }
      case Experiment::wprop_matching: {
        MatchingOverrides overrides;
        overrides.tau = tau_override;
        const auto outcome = matching_based_wprop(instance, DistMeta::of(dist), cell.epsilon, overrides);
        if (const auto* found = std::get_if<MatchingAllocation>(&outcome)) {
          out.allocation_found = true;
          out.predicate_holds = is_wprop(instance, found->allocation).holds;
        }
        out.success = out.allocation_found && out.predicate_holds;
        break;
      }
      case Experiment::wprop_certificate: {
        out.certificate_fired = wprop_counting_certificate(instance).certified;
        out.success = out.certificate_fired;
        break;
      }
      case Experiment::two_agent_threshold: {
        const auto result = two_agent_threshold(instance, dist);
        out.allocation_found = true;
        out.predicate_holds = is_wprop(instance, result.allocation).holds;
        out.success = out.predicate_holds;
        break;
      }
      case Experiment::two_agent_nonexistence: {
        out.certificate_fired = two_agent_nonexistence_certificate(instance).certified;
        bool no_wef = false;
        if (instance.items() <= kExhaustiveItemLimit) {
          const auto search = exists_fair_allocation(instance, Notion::wef);
          out.allocation_found = search.exists;
          no_wef = !search.exists;
        }
        out.predicate_holds = no_wef;
        out.success = no_wef || out.certificate_fired;
        break;
      }
    }
  } catch (const std::exception& e) {
    out = TrialOutcome{};
    out.error = e.what();
    if (out.error.empty()) out.error = "unknown error";
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Estimate estimate_existence_probability(const Cell& cell, Experiment experiment, std::size_t trials,
                                        const SeedStream& stream, std::optional<double> tau_override) {
  if (trials == 0) throw ConfigError("trials must be at least 1");
  Estimate est;
  est.trials = trials;
  SeedStream cell_stream = stream;
  for (std::size_t t = 0; t < trials; ++t) {
    SeedStream trial_stream = stream.fork(t);
    if (run_trial(cell, experiment, tau_override, cell_stream, trial_stream).success) ++est.successes;
  }
  est.estimate = static_cast<double>(est.successes) / static_cast<double>(trials);
  est.ci = wilson_interval(est.successes, trials);
  return est;
}

SweepResult run_sweep(const SweepConfig& config) {
  const auto cells = config.cells();
  const SeedStream root(config.seed);
  const std::size_t total = cells.size() * config.trials;

  SweepResult result;
  result.trials.resize(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t c = k / config.trials;
      const std::size_t t = k % config.trials;
      SeedStream cell_stream = root.fork(c);
      SeedStream trial_stream = cell_stream.fork(t);
      auto outcome = run_trial(cells[c], config.experiment, config.tau_override, cell_stream, trial_stream);
      outcome.cell = c;
      outcome.trial = t;
      if (!config.record_timing) outcome.wall_ms = 0.0;
      result.trials[k] = std::move(outcome);
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellResult cr;
    cr.cell = cells[c];
    cr.trials = config.trials;
    double wall = 0.0;
    for (std::size_t t = 0; t < config.trials; ++t) {
      const auto& o = result.trials[c * config.trials + t];
      if (o.success) ++cr.successes;
      if (!o.error.empty()) ++cr.errors;
      wall += o.wall_ms;
    }
    cr.estimate = static_cast<double>(cr.successes) / static_cast<double>(cr.trials);
    cr.ci = wilson_interval(cr.successes, cr.trials);
    cr.mean_wall_ms = wall / static_cast<double>(cr.trials);
    result.cells.push_back(std::move(cr));
  }
  return result;
}

}  // namespace wfd
