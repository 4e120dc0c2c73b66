#pragma once

// Monte Carlo harness: per-trial instance generation from a seed tree,
// success predicates per experiment kind, and Wilson-interval aggregation
// over a parameter grid.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wfd/core.hpp"
#include "wfd/rng.hpp"
#include "wfd/sampling.hpp"
#include "wfd/stats.hpp"

namespace wfd {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two-type weight vector: ceil((1-d)n) light agents sharing total weight d
/// and floor(d n) heavy agents sharing 1-d, where d = (1 - mu) eps. Total
/// weight is 1. Light agents come first. Throws ConfigError unless
/// eps in (0, 1/2), mu in (0, 1) and floor(d n) >= 2.
std::vector<double> adversarial_weights(std::size_t n, double mu, double epsilon);

/// How a cell's weight vector is produced.
///   equal                      all weights 1
///   uniform:lo=<a>,hi=<b>      i.i.d. uniform in [a, b), fresh per trial
///   uniform:lo=<a>,hi=<b>,fixed=1   drawn once per cell, shared by its trials
///   adversarial:eps=<e>        adversarial_weights(n, mu, e)
///   ratio:r=<r>                (1, r); two agents only
class WeightScheme {
 public:
  enum class Kind { equal, uniform, adversarial, ratio };

  static WeightScheme parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool fixed() const { return fixed_; }
  const std::string& text() const { return text_; }

  /// Weights for n agents. `stream` is only consumed by the uniform kind.
  std::vector<double> make(std::size_t n, double mu, SeedStream& stream) const;

 private:
  Kind kind_ = Kind::equal;
  double a_ = 0.0;
  double b_ = 0.0;
  bool fixed_ = false;
  std::string text_ = "equal";
};

/// What a trial runs and what counts as success.
enum class Experiment {
  wef_picking,             // picking sequence output is WEF
  wef1_picking,            // picking sequence output is WEF1
  wprop_matching,          // matching algorithm returns a WPROP allocation
  wprop_certificate,       // counting certificate fires
  two_agent_threshold,     // threshold allocation is WPROP
  two_agent_nonexistence,  // exhaustive search finds no WEF, or certificate fires
};

Experiment parse_experiment(std::string_view text);
std::string_view to_string(Experiment e);

/// One grid point.
struct Cell {
  std::size_t n = 2;
  std::size_t m = 2;
  std::optional<double> m_multiplier;  // set when m came from mult * n / (1 - mu)
  std::string dist = "uniform";
  std::string weights = "equal";
  double epsilon = 0.3;
};

struct SweepConfig {
  Experiment experiment = Experiment::wef_picking;
  std::vector<std::size_t> n;
  /// Either explicit item counts or multipliers of n / (1 - mu); one must be
  /// non-empty.
  std::vector<std::size_t> m;
  std::vector<double> m_multiplier;
  std::vector<std::string> dist{"uniform"};
  std::vector<std::string> weights{"equal"};
  std::vector<double> epsilon{0.3};
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::optional<double> tau_override;
  /// When false, wall times are reported as 0 so output is byte-stable.
  bool record_timing = true;

  /// Throws ConfigError on an empty grid, zero trials or unparsable axes.
  void validate() const;
  /// Cells in row-major order over (n, m | m_multiplier, dist, weights, eps).
  std::vector<Cell> cells() const;
};

struct TrialOutcome {
  std::size_t cell = 0;
  std::size_t trial = 0;
  bool success = false;
  bool allocation_found = false;
  bool predicate_holds = false;
  bool certificate_fired = false;
  double wall_ms = 0.0;
  std::string error;  // non-empty when the trial could not be instantiated
};

struct CellResult {
  Cell cell;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t errors = 0;
  double estimate = 0.0;
  Interval ci;
  double mean_wall_ms = 0.0;
};

struct SweepResult {
  std::vector<CellResult> cells;
  std::vector<TrialOutcome> trials;  // sorted by (cell, trial)
};

/// Instance for one trial: weights from stream.fork(0) (or the cell stream
/// for fixed schemes), utilities from stream.fork(1).
Instance make_trial_instance(const Cell& cell, SeedStream& cell_stream, SeedStream& trial_stream);

/// Runs one trial; instantiation failures are captured in `error`.
TrialOutcome run_trial(const Cell& cell, Experiment experiment, std::optional<double> tau_override,
                       SeedStream& cell_stream, SeedStream& trial_stream);

struct Estimate {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double estimate = 0.0;
  Interval ci;
};

/// Success fraction over `trials` trials of one cell (trial t uses
/// stream.fork(t)), with a Wilson 95% interval.
Estimate estimate_existence_probability(const Cell& cell, Experiment experiment, std::size_t trials,
                                        const SeedStream& stream,
                                        std::optional<double> tau_override = std::nullopt);

/// Runs every cell; cell c uses SeedStream(seed).fork(c). Trials run on
/// `threads` workers and the result does not depend on the thread count.
SweepResult run_sweep(const SweepConfig& config);

}  // namespace wfd
