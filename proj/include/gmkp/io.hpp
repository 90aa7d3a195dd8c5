#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gmkp/model.hpp"
#include "gmkp/pipeline.hpp"

namespace gmkp {

inline constexpr const char* kInstanceSchema = "gmkp/1";
inline constexpr const char* kResultSchema = "gmkp-result/1";

/// Instance file text:
///   {"schema": "gmkp/1", "id": ..., "capacities": [...],
///    "groups": [{"reward": p, "items": [w, ...]}, ...], "meta": {...}}
/// Items are written group by group, so instances whose items are numbered
/// that way (everything built by from_groups) round-trip exactly.
std::string instance_to_json(const Instance& instance);
/// Throws InputError on malformed text or a wrong schema tag.
Instance instance_from_json(std::string_view text);

std::string read_text(const std::filesystem::path& path);
/// Writes atomically enough for our purposes (truncate + write); reports the
/// path on failure.
void write_text(const std::filesystem::path& path, std::string_view text);
Instance read_instance(const std::filesystem::path& path);

/// Normalizes and validates; throws InputError listing the first problems.
Normalized prepare(const Instance& instance);

/// Result document with indices mapped back to the original instance:
/// selection as group indices, assignment as parallel (group, item-in-group,
/// knapsack) arrays, loads and metrics over all original knapsacks, stage
/// timings in milliseconds.
nlohmann::json result_to_json(const Instance& original, const Normalized& normalized, const SolveResult& result);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view text);

/// Nearest-rank percentile (p in (0, 100]) of a non-empty sample.
double percentile(std::vector<double> values, double p);

}  // namespace gmkp
