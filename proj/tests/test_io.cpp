#include "doctest.h"

#include <sstream>

#include "generators.hpp"
#include "wfd/io.hpp"

using namespace wfd;
using nlohmann::json;

TEST_CASE("instances round-trip through JSON exactly") {
  SeedStream rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = wfd::testing::random_instance(rng, 3, 7);
    const auto text = to_json(inst).dump();
    const auto back = instance_from_json(parse_json(text, "test"));
    CHECK(back.weights() == inst.weights());
    CHECK(back.utilities() == inst.utilities());
  }
}

TEST_CASE("instance JSON layout") {
  const Instance inst({1.0, 2.5}, UtilityMatrix({{0.25, 0.5}, {1.0, 0.0}}));
  const auto j = to_json(inst);
  CHECK(j.at("n") == 2);
  CHECK(j.at("m") == 2);
  CHECK(j.at("weights") == json::array({1.0, 2.5}));
  CHECK(j.at("utilities")[1] == json::array({1.0, 0.0}));

  auto with_extra = j;
  with_extra["provenance"] = {{"seed", 7}};
  CHECK(instance_from_json(with_extra).weights() == inst.weights());
}

TEST_CASE("malformed instances are input errors") {
  CHECK_THROWS_AS(parse_json("{\"n\": 2,", "x"), InputError);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"weights": [1]})")), InputError);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"weights": [1], "utilities": [[0.5, "a"]]})")), InputError);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"n": 3, "weights": [1, 1], "utilities": [[0.5], [0.5]]})")),
                  InputError);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"m": 2, "weights": [1], "utilities": [[0.5]]})")), InputError);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"weights": [1], "utilities": [[1.5]]})")), InputError);
  CHECK_THROWS_AS(read_file("/nonexistent/instance.json"), InputError);
}

TEST_CASE("allocations round-trip through JSON") {
  const Allocation a({{2, 0}, {}, {1}});
  const auto j = to_json(a);
  CHECK(j.dump() == R"({"bundles":[[0,2],[],[1]]})");
  CHECK(allocation_from_json(j) == a);
  CHECK_THROWS_AS(allocation_from_json(json::parse(R"({"bundles": [[-1]]})")), InputError);
  CHECK_THROWS_AS(allocation_from_json(json::parse(R"({"bundle": []})")), InputError);
}

TEST_CASE("trace, graph and envy report JSON") {
  const PickingTrace trace(2, {0, 1, 1}, {2, 0, 1});
  CHECK(to_json(trace).dump() == R"({"items":[2,0,1],"order":[0,1,1],"pick_counts":[1,2]})");

  const BipartiteGraph g(3, {{0, 2}, {1}});
  CHECK(to_json(g).dump() == R"({"adjacency":[[0,2],[1]],"left":2,"right":3})");

  const Instance inst({1.0, 1.0}, UtilityMatrix({{0.5, 0.5}, {0.5, 0.5}}));
  const auto report = to_json(is_wef1(inst, Allocation({{}, {0, 1}})).report);
  REQUIRE(report.size() == 2);
  CHECK(report[0].at("i") == 0);
  CHECK(report[0].at("weighted_value_gap") == -1.0);
  CHECK_FALSE(report[0].contains("wef1_witness"));
  CHECK(report[1].at("weighted_value_gap") == 1.0);
}

TEST_CASE("sweep config JSON") {
  const auto j = json::parse(R"({
    "experiment": "wprop_certificate",
    "trials": 20,
    "seed": 9,
    "record_timing": false,
    "grid": {"n": [20, 40], "m_multiplier": 0.7, "weights": "adversarial:eps=0.3"}
  })");
  const auto c = sweep_config_from_json(j);
  CHECK(c.experiment == Experiment::wprop_certificate);
  CHECK(c.trials == 20);
  CHECK(c.seed == 9);
  CHECK_FALSE(c.record_timing);
  CHECK(c.n == std::vector<std::size_t>{20, 40});
  CHECK(c.m_multiplier == std::vector<double>{0.7});
  CHECK(c.dist == std::vector<std::string>{"uniform"});
  CHECK(c.epsilon == std::vector<double>{0.3});

  const auto again = sweep_config_from_json(to_json(c));
  CHECK(to_json(again) == to_json(c));
  CHECK(config_hash(to_json(again)) == config_hash(to_json(c)));

  auto other = to_json(c);
  other["seed"] = 10;
  CHECK(config_hash(other) != config_hash(to_json(c)));

  // The worker count is not part of the configuration identity.
  auto threaded = c;
  threaded.threads = 8;
  CHECK(to_json(threaded) == to_json(c));

  CHECK_THROWS_AS(sweep_config_from_json(json::parse(R"({"experiment": "wef_picking", "grid": {"n": 2, "m": 2}})")),
                  ConfigError);
  CHECK_THROWS_AS(
      sweep_config_from_json(json::parse(R"({"experiment": "wef_picking", "trials": 0, "grid": {"n": 2, "m": 2}})")),
      ConfigError);
  CHECK_THROWS_AS(
      sweep_config_from_json(json::parse(R"({"experiment": "wef_picking", "trials": 1, "grid": {"n": "two", "m": 2}})")),
      ConfigError);
}

TEST_CASE("hash and number formatting") {
  // FNV-1a 64 of the dump "\"abc\"", computed independently.
  CHECK(config_hash(json("abc")) == 0xc6cf8fb538aadbabULL);
  CHECK(hex64(0xcbf29ce484222325ULL) == "cbf29ce484222325");
  CHECK(hex64(1) == "0000000000000001");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("sweep CSV layout") {
  SweepConfig c;
  c.experiment = Experiment::wef1_picking;
  c.n = {3};
  c.m = {5, 6};
  c.weights = {"uniform:lo=1,hi=2"};
  c.trials = 4;
  c.seed = 1;
  c.record_timing = false;
  const auto csv = sweep_csv(c, run_sweep(c));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# wfd 0.1.0 rng=mt19937_64/splitmix64-derive/v1 experiment=wef1_picking seed=1 config=", 0) == 0);
  std::getline(in, line);
  CHECK(line == "n,m,m_multiplier,dist,weights,eps,trials,successes,estimate,ci_lo,ci_hi,mean_wall_ms");
  std::getline(in, line);
  CHECK(line.rfind("3,5,,uniform,\"uniform:lo=1,hi=2\",0.29999999999999999,4,4,1,", 0) == 0);
  CHECK(line.substr(line.size() - 4) == ",1,0");
  std::getline(in, line);
  CHECK(line.rfind("3,6,", 0) == 0);
  CHECK_FALSE(std::getline(in, line));
}
