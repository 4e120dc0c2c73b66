// wfd: command-line front end for the weighted fair-division library.
//
// Exit codes: 0 success / predicate holds, 1 predicate fails or no fair
// allocation exists, 2 input error, 3 guard exceeded.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wfd/algorithms.hpp"
#include "wfd/core.hpp"
#include "wfd/experiments.hpp"
#include "wfd/io.hpp"
#include "wfd/oracle.hpp"
#include "wfd/sampling.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;
constexpr int kGuard = 3;

json provenance(std::optional<std::uint64_t> seed, const json& settings) {
  json p{{"tool", "wfd " + std::string(wfd::kToolVersion)},
         {"rng", std::string(wfd::kRngAlgorithm)},
         {"config_hash", wfd::hex64(wfd::config_hash(settings))},
         {"settings", settings}};
  p["seed"] = seed ? json(*seed) : json(nullptr);
  return p;
}

void emit(const json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    wfd::write_file(path, text);
  }
}

wfd::Instance load_instance(const std::string& path) {
  return wfd::instance_from_json(wfd::parse_json(wfd::read_file(path), path));
}

struct GenArgs {
  std::size_t n = 2;
  std::size_t m = 2;
  std::string dist = "uniform";
  std::string weights = "equal";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  wfd::Cell cell;
  cell.n = a.n;
  cell.m = a.m;
  cell.dist = wfd::Distribution::parse(a.dist).name();
  cell.weights = a.weights;
  wfd::SeedStream root(a.seed);
  const auto instance = wfd::make_trial_instance(cell, root, root);
  json settings{{"command", "gen"}, {"n", a.n}, {"m", a.m}, {"dist", cell.dist}, {"weights", a.weights}};
  json doc = wfd::to_json(instance);
  doc["provenance"] = provenance(a.seed, settings);
  emit(doc, a.out);
  return kOk;
}

struct CheckArgs {
  std::string instance;
  std::string allocation;
  std::string notion = "wef";
  double tolerance = 0.0;
};

int cmd_check(const CheckArgs& a) {
  const auto instance = load_instance(a.instance);
  const auto allocation = wfd::allocation_from_json(wfd::parse_json(wfd::read_file(a.allocation), a.allocation));
  allocation.validate(instance);
  const auto notion = wfd::parse_notion(a.notion);
  json report{{"notion", std::string(wfd::to_string(notion))}, {"tolerance", a.tolerance}};
  bool holds = false;
  if (notion == wfd::Notion::wprop) {
    const auto check = wfd::is_wprop(instance, allocation, a.tolerance);
    holds = check.holds;
    report["shortfall"] = check.shortfall;
    report["violators"] = check.violators;
  } else {
    const auto check = notion == wfd::Notion::wef ? wfd::is_wef(instance, allocation, a.tolerance)
                                                  : wfd::is_wef1(instance, allocation, a.tolerance);
    holds = check.holds;
    json violations = json::array();
    for (auto [i, j] : check.violations) violations.push_back({{"i", i}, {"j", j}});
    report["violations"] = std::move(violations);
    report["pairs"] = wfd::to_json(check.report);
  }
  report["holds"] = holds;
  emit(report, "-");
  return holds ? kOk : kFails;
}

struct AllocateArgs {
  std::string algo = "wps";
  std::string instance;
  std::string out;
  std::string dist = "uniform";
  double eps = 0.3;
  std::optional<double> tau_override;
  std::string dump_graph;
};

int cmd_allocate(const AllocateArgs& a) {
  const auto instance = load_instance(a.instance);
  const auto dist = wfd::Distribution::parse(a.dist);
  json settings{{"command", "allocate"}, {"algo", a.algo}, {"dist", dist.name()}};
  if (a.algo == "matching") {
    settings["eps"] = a.eps;
    if (a.tau_override) settings["tau_override"] = *a.tau_override;
  }

  json doc;
  int code = kOk;
  if (a.algo == "wps") {
    const auto result = wfd::weighted_picking_sequence(instance);
    doc = wfd::to_json(result.allocation);
    doc["trace"] = wfd::to_json(result.trace);
  } else if (a.algo == "round-robin") {
    doc = wfd::to_json(wfd::round_robin(instance));
  } else if (a.algo == "two-agent") {
    const auto result = wfd::two_agent_threshold(instance, dist);
    doc = wfd::to_json(result.allocation);
    doc["threshold"] = {{"p", result.probability}, {"tau", result.tau}};
  } else if (a.algo == "matching") {
    wfd::MatchingOverrides overrides;
    overrides.tau = a.tau_override;
    wfd::WpropParameters params;
    try {
      params = wfd::wprop_parameters(instance, wfd::DistMeta::of(dist), a.eps, overrides);
    } catch (const wfd::ThresholdInvalid& e) {
      std::cerr << "wfd: " << e.what()
                << (a.tau_override ? "\n" : " (pass --tau-override for small instances)\n");
      return kGuard;
    }
    if (!a.dump_graph.empty())
      wfd::write_file(a.dump_graph, wfd::to_json(wfd::threshold_graph(instance, params.tau)).dump() + "\n");
    const auto outcome = wfd::matching_based_wprop(instance, wfd::DistMeta::of(dist), a.eps, overrides);
    json p{{"tau", params.tau}, {"delta", params.delta}, {"quotas", params.quotas},
           {"weight_ratio", params.weight_ratio}, {"canonical", params.canonical}};
    if (const auto* found = std::get_if<wfd::MatchingAllocation>(&outcome)) {
      doc = wfd::to_json(found->allocation);
      doc["parameters"] = std::move(p);
    } else {
      const auto& failed = std::get<wfd::NoSaturatingMatching>(outcome);
      doc = json{{"bundles", nullptr},
                 {"parameters", std::move(p)},
                 {"deficient_set",
                  {{"agents", failed.witness.agents},
                   {"neighborhood", failed.witness.neighborhood},
                   {"demand", failed.witness.demand}}}};
      code = kFails;
    }
    settings["canonical"] = params.canonical;
  } else {
    throw wfd::InputError("unknown algorithm '" + a.algo + "'");
  }
  doc["provenance"] = provenance(std::nullopt, settings);
  emit(doc, a.out);
  return code;
}

struct OracleArgs {
  std::string instance;
  std::string notion = "wef";
  bool certify_only = false;
  bool quantize = false;
  std::size_t threads = 1;
  double tolerance = 0.0;
};

int cmd_oracle(const OracleArgs& a) {
  auto instance = load_instance(a.instance);
  const auto notion = wfd::parse_notion(a.notion);
  json doc{{"notion", std::string(wfd::to_string(notion))}};

  bool certified = false;
  if (notion != wfd::Notion::wef1) {
    const auto counting = wfd::wprop_counting_certificate(instance);
    doc["counting_certificate"] = {{"certified", counting.certified},
                                   {"required_items", counting.required_items},
                                   {"items", counting.items}};
    certified = counting.certified;
    if (instance.agents() == 2) {
      // Existence is invariant under relabeling, so put the heavier agent second.
      const auto& w = instance.weights();
      const auto ordered = w[1] >= w[0]
                               ? instance
                               : wfd::Instance({w[1], w[0]}, [&] {
                                   wfd::UtilityMatrix u(2, instance.items());
                                   for (std::size_t g = 0; g < instance.items(); ++g) {
                                     u(0, g) = instance.utility(1, g);
                                     u(1, g) = instance.utility(0, g);
                                   }
                                   return u;
                                 }());
      const auto two = wfd::two_agent_nonexistence_certificate(ordered);
      doc["two_agent_certificate"] = {{"certified", two.certified},
                                      {"item_count_bound", two.item_count_bound},
                                      {"ratio", two.ratio},
                                      {"min_value", two.min_value}};
      certified = certified || two.certified;
    }
  }

  if (a.certify_only) {
    doc["status"] = certified ? "not exists" : "inconclusive";
    emit(doc, "-");
    return certified ? kFails : kOk;
  }

  wfd::SearchOptions options;
  options.threads = a.threads;
  options.quantize = a.quantize;
  options.tolerance = a.tolerance;
  wfd::ExistenceResult result;
  try {
    result = wfd::exists_fair_allocation(instance, notion, options);
  } catch (const wfd::InstanceTooLarge& e) {
    std::cerr << "wfd: " << e.what() << "\n";
    return kGuard;
  }
  doc["status"] = result.exists ? "exists" : "not exists";
  doc["exists"] = result.exists;
  doc["examined"] = result.examined;
  if (result.witness) doc["witness"] = wfd::to_json(*result.witness);
  emit(doc, "-");
  return result.exists ? kOk : kFails;
}

struct SweepArgs {
  std::string config;
  std::string out;
  std::optional<std::size_t> threads;
};

int cmd_sweep(const SweepArgs& a) {
  auto config = wfd::sweep_config_from_json(wfd::parse_json(wfd::read_file(a.config), a.config));
  if (a.threads) config.threads = *a.threads;
  const auto result = wfd::run_sweep(config);
  const auto csv = wfd::sweep_csv(config, result);
  if (a.out.empty() || a.out == "-") {
    std::cout << csv;
  } else {
    wfd::write_file(a.out, csv);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted fair division: allocation algorithms, fairness checks and Monte Carlo sweeps"};
  app.set_version_flag("--version", "wfd " + std::string(wfd::kToolVersion) + " (rng " +
                                        std::string(wfd::kRngAlgorithm) + ")");
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n", gen.n, "Number of agents")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m, "Number of items")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dist", gen.dist, "uniform | linear:a=<x>");
  gen_cmd->add_option("--weights", gen.weights, "equal | uniform:lo=,hi= | adversarial:eps= | ratio:r=");
  gen_cmd->add_option("--seed", gen.seed, "Root seed");
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check an allocation against a fairness notion");
  check_cmd->add_option("--instance", check.instance)->required();
  check_cmd->add_option("--allocation", check.allocation)->required();
  check_cmd->add_option("--notion", check.notion, "wef | wef1 | wprop");
  check_cmd->add_option("--tol", check.tolerance, "Absolute comparison tolerance")->check(CLI::NonNegativeNumber);

  AllocateArgs alloc;
  auto* alloc_cmd = app.add_subcommand("allocate", "Run an allocation algorithm");
  alloc_cmd->add_option("--algo", alloc.algo, "wps | matching | two-agent | round-robin")
      ->check(CLI::IsMember({"wps", "matching", "two-agent", "round-robin"}));
  alloc_cmd->add_option("--instance", alloc.instance)->required();
  alloc_cmd->add_option("--out", alloc.out, "Output file (default stdout)");
  alloc_cmd->add_option("--dist", alloc.dist, "Utility distribution the instance was drawn from");
  alloc_cmd->add_option("--eps", alloc.eps, "Slack epsilon for the matching algorithm");
  alloc_cmd->add_option("--tau-override", alloc.tau_override, "Use this threshold instead of the default");
  alloc_cmd->add_option("--dump-graph", alloc.dump_graph, "Write the threshold graph as JSON adjacency lists");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Decide existence by exhaustive search and certificates");
  oracle_cmd->add_option("--instance", oracle.instance)->required();
  oracle_cmd->add_option("--notion", oracle.notion, "wef | wef1 | wprop");
  oracle_cmd->add_flag("--certify-only", oracle.certify_only, "Only run the non-existence certificates");
  oracle_cmd->add_flag("--quantize", oracle.quantize, "Round utilities to multiples of 2^-30 first");
  oracle_cmd->add_option("--threads", oracle.threads)->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--tol", oracle.tolerance)->check(CLI::NonNegativeNumber);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a Monte Carlo sweep from a JSON config");
  sweep_cmd->add_option("--config", sweep.config)->required();
  sweep_cmd->add_option("--out", sweep.out, "CSV output file (default stdout)");
  sweep_cmd->add_option("--threads", sweep.threads)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*check_cmd) return cmd_check(check);
    if (*alloc_cmd) return cmd_allocate(alloc);
    if (*oracle_cmd) return cmd_oracle(oracle);
    if (*sweep_cmd) return cmd_sweep(sweep);
  } catch (const wfd::InstanceTooLarge& e) {
    std::cerr << "wfd: " << e.what() << "\n";
    return kGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "wfd: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "wfd: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
