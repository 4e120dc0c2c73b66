#pragma once

// JSON and CSV formats shared by the command-line tool.
//
//   Instance:   {"n": int, "m": int, "weights": [n], "utilities": [[m] x n]}
//   Allocation: {"bundles": [[item indices] x n]}   (0-based)
//
// Readers ignore unknown keys such as "provenance".

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "wfd/algorithms.hpp"
#include "wfd/core.hpp"
#include "wfd/experiments.hpp"
#include "wfd/matching.hpp"

namespace wfd {

inline constexpr std::string_view kToolVersion = "0.1.0";

nlohmann::json to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Allocation& allocation);
Allocation allocation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PickingTrace& trace);
nlohmann::json to_json(const BipartiteGraph& graph);
nlohmann::json to_json(const EnvyReport& report);

SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepConfig& config);

/// FNV-1a 64 of the canonical (sorted-key, compact) JSON dump.
std::uint64_t config_hash(const nlohmann::json& j);
std::string hex64(std::uint64_t x);

/// Sweep table. The first line is a '#' provenance comment; then a header
/// and one row per cell. Reals are written with 17 significant digits.
std::string sweep_csv(const SweepConfig& config, const SweepResult& result);

/// Formats a double with 17 significant digits.
std::string format_real(double x);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);
/// Parses JSON; throws InputError on a syntax error.
nlohmann::json parse_json(std::string_view text, std::string_view origin);
void write_file(const std::string& path, std::string_view contents);

}  // namespace wfd
