#include "wfd/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace wfd {

using nlohmann::json;

json to_json(const Instance& instance) {
  json utilities = json::array();
  for (std::size_t i = 0; i < instance.agents(); ++i) {
    auto row = instance.utilities_of(i);
    utilities.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return json{{"n", instance.agents()},
              {"m", instance.items()},
              {"weights", instance.weights()},
              {"utilities", std::move(utilities)}};
}

Instance instance_from_json(const json& j) {
  try {
    const auto weights = j.at("weights").get<std::vector<double>>();
    const auto rows = j.at("utilities").get<std::vector<std::vector<double>>>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != weights.size())
      throw InputError("field n disagrees with the number of weights");
    if (j.contains("m") && !rows.empty() && j.at("m").get<std::size_t>() != rows.front().size())
      throw InputError("field m disagrees with the utility rows");
    return Instance(weights, UtilityMatrix(rows));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance JSON: ") + e.what());
  }
}

json to_json(const Allocation& allocation) { return json{{"bundles", allocation.bundles()}}; }

Allocation allocation_from_json(const json& j) {
  try {
    for (const auto& bundle : j.at("bundles"))
      for (const auto& item : bundle)
        if (!item.is_number_unsigned()) throw InputError("bundle entries must be non-negative item indices");
    return Allocation(j.at("bundles").get<std::vector<std::vector<std::size_t>>>());
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed allocation JSON: ") + e.what());
  }
}

json to_json(const PickingTrace& trace) {
  json counts = json::array();
  for (std::size_t i = 0; i < trace.agents(); ++i) counts.push_back(trace.pick_count(i));
  return json{{"order", trace.order()}, {"items", trace.picked_items()}, {"pick_counts", std::move(counts)}};
}

json to_json(const BipartiteGraph& graph) {
  return json{{"left", graph.left_size()}, {"right", graph.right_size()}, {"adjacency", graph.adjacency()}};
}

json to_json(const EnvyReport& report) {
  json pairs = json::array();
  for (std::size_t i = 0; i < report.agents(); ++i) {
    for (std::size_t j = 0; j < report.agents(); ++j) {
      if (i == j) continue;
      json entry{{"i", i}, {"j", j}, {"weighted_value_gap", report.gap(i, j)}};
      if (auto g = report.wef1_witness(i, j)) entry["wef1_witness"] = *g;
      pairs.push_back(std::move(entry));
    }
  }
  return pairs;
}

namespace {

template <class T>
std::vector<T> axis(const json& grid, const char* key) {
  if (!grid.contains(key)) return {};
  const auto& v = grid.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

}  // namespace

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig c;
  try {
    c.experiment = parse_experiment(j.at("experiment").get<std::string>());
    c.trials = j.at("trials").get<std::size_t>();
    c.seed = j.value("seed", std::uint64_t{0});
    c.threads = j.value("threads", std::size_t{1});
    c.record_timing = j.value("record_timing", true);
    if (j.contains("tau_override") && !j.at("tau_override").is_null())
      c.tau_override = j.at("tau_override").get<double>();
    const auto& grid = j.at("grid");
    c.n = axis<std::size_t>(grid, "n");
    c.m = axis<std::size_t>(grid, "m");
    c.m_multiplier = axis<double>(grid, "m_multiplier");
    if (grid.contains("dist")) c.dist = axis<std::string>(grid, "dist");
    if (grid.contains("weights")) c.weights = axis<std::string>(grid, "weights");
    if (grid.contains("eps")) c.epsilon = axis<double>(grid, "eps");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed sweep config: ") + e.what());
  }
  c.validate();
  return c;
}

json to_json(const SweepConfig& c) {
  json grid{{"n", c.n}, {"dist", c.dist}, {"weights", c.weights}, {"eps", c.epsilon}};
  if (c.m.empty()) {
    grid["m_multiplier"] = c.m_multiplier;
  } else {
    grid["m"] = c.m;
  }
  json j{{"experiment", std::string(to_string(c.experiment))},
         {"trials", c.trials},
         {"seed", c.seed},
         {"record_timing", c.record_timing},
         {"grid", std::move(grid)}};
  if (c.tau_override) j["tau_override"] = *c.tau_override;
  return j;
}

std::uint64_t config_hash(const json& j) {
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string sweep_csv(const SweepConfig& config, const SweepResult& result) {
  std::ostringstream os;
  os << "# wfd " << kToolVersion << " rng=" << kRngAlgorithm << " experiment=" << to_string(config.experiment)
     << " seed=" << config.seed << " config=" << hex64(config_hash(to_json(config))) << "\n";
  os << "n,m,m_multiplier,dist,weights,eps,trials,successes,estimate,ci_lo,ci_hi,mean_wall_ms\n";
  for (const auto& cell : result.cells) {
    const auto& c = cell.cell;
    os << c.n << ',' << c.m << ',' << (c.m_multiplier ? format_real(*c.m_multiplier) : std::string{}) << ','
       << csv_field(c.dist) << ',' << csv_field(c.weights) << ',' << format_real(c.epsilon) << ',' << cell.trials
       << ',' << cell.successes << ',' << format_real(cell.estimate) << ',' << format_real(cell.ci.lo) << ','
       << format_real(cell.ci.hi) << ',' << format_real(cell.mean_wall_ms) << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, std::string_view origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in '" + std::string(origin) + "': " + e.what());
  }
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace wfd
