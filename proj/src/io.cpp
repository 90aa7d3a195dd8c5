#include "gmkp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gmkp/errors.hpp"

namespace gmkp {

using nlohmann::json;

std::string instance_to_json(const Instance& instance) {
  json doc = json::object();
  doc["schema"] = kInstanceSchema;
  if (!instance.id.empty()) doc["id"] = instance.id;
  doc["capacities"] = instance.capacities;
  json groups = json::array();
  for (Index l = 0; l < instance.num_groups(); ++l) {
    json items = json::array();
    for (const Index j : instance.groups[l]) items.push_back(instance.item_weights[j]);
    groups.push_back({{"reward", instance.rewards.at(l)}, {"items", std::move(items)}});
  }
  doc["groups"] = std::move(groups);
  doc["meta"] = instance.meta.empty() ? json::object() : json::parse(instance.meta);
  return doc.dump(1) + "\n";
}

namespace {

std::int64_t as_int(const json& value, const std::string& what) {
  if (!value.is_number_integer()) throw InputError(what + " must be an integer");
  return value.get<std::int64_t>();
}

}  // namespace

Instance instance_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("instance JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("instance JSON: top level must be an object");
  if (!doc.contains("schema") || doc["schema"] != kInstanceSchema) {
    throw InputError(std::string("instance JSON: schema must be \"") + kInstanceSchema + "\"");
  }
  if (!doc.contains("capacities") || !doc["capacities"].is_array()) throw InputError("instance JSON: missing capacities");
  if (!doc.contains("groups") || !doc["groups"].is_array()) throw InputError("instance JSON: missing groups");

  std::vector<std::int64_t> caps;
  for (const auto& c : doc["capacities"]) caps.push_back(as_int(c, "capacity"));
  std::vector<Instance::GroupSpec> specs;
  for (const auto& g : doc["groups"]) {
    if (!g.is_object() || !g.contains("reward") || !g.contains("items") || !g["items"].is_array()) {
      throw InputError("instance JSON: every group needs reward and items");
    }
    Instance::GroupSpec spec{as_int(g["reward"], "reward"), {}};
    for (const auto& w : g["items"]) spec.weights.push_back(as_int(w, "item weight"));
    specs.push_back(std::move(spec));
  }
  std::string id;
  if (doc.contains("id")) {
    if (!doc["id"].is_string()) throw InputError("instance JSON: id must be a string");
    id = doc["id"].get<std::string>();
  }
  Instance inst = Instance::from_groups(std::move(caps), specs, std::move(id));
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) throw InputError("instance JSON: meta must be an object");
    if (!doc["meta"].empty()) inst.meta = doc["meta"].dump();
  }
  return inst;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("write failed: " + path.string());
}

Instance read_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(read_text(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Normalized prepare(const Instance& instance) {
  Normalized norm = normalize(instance);
  const auto problems = validate(norm.instance);
  if (!problems.empty()) {
    std::string msg = "invalid instance:";
    for (std::size_t i = 0; i < problems.size() && i < 5; ++i) msg += " " + problems[i].message + ";";
    throw InputError(msg);
  }
  return norm;
}

nlohmann::json result_to_json(const Instance& original, const Normalized& normalized, const SolveResult& result) {
  const NormalizationReport& rep = normalized.report;
  const Instance& inst = normalized.instance;

  std::vector<Index> orig_group(original.num_items(), npos);
  std::vector<Index> orig_pos(original.num_items(), npos);
  for (Index l = 0; l < original.num_groups(); ++l) {
    for (Index p = 0; p < original.groups[l].size(); ++p) {
      orig_group[original.groups[l][p]] = l;
      orig_pos[original.groups[l][p]] = p;
    }
  }

  json selection = json::array();
  for (const Index l : result.selection.indices()) selection.push_back(rep.kept_groups[l]);

  json groups = json::array(), items = json::array(), knaps = json::array();
  std::vector<std::int64_t> loads(original.num_knapsacks(), 0);
  for (Index l : result.selection.indices()) {
    for (const Index j : inst.groups[l]) {
      const auto k = result.assignment.knapsack_of(j);
      if (!k) continue;
      const Index oj = rep.kept_items[j];
      const Index ok = rep.kept_knapsacks[*k];
      groups.push_back(orig_group[oj]);
      items.push_back(orig_pos[oj]);
      knaps.push_back(ok);
      loads[ok] += original.item_weights[oj];
    }
  }
  std::int64_t max_exceeded = loads.empty() ? 0 : loads[0] - original.capacities[0];
  for (Index i = 0; i < loads.size(); ++i) max_exceeded = std::max(max_exceeded, loads[i] - original.capacities[i]);

  json metrics = {{"reward", result.metrics.reward}, {"max_exceeded", max_exceeded}};
  metrics["beta_ratio"] = Rational(max_exceeded, original.max_capacity()).str();
  if (result.metrics.alpha_ratio) metrics["alpha_ratio"] = result.metrics.alpha_ratio->str();

  json thresholds = json::array();
  for (const auto& d : result.variant.thresholds) thresholds.push_back(d.str());

  json doc = {
      {"schema", kResultSchema},
      {"instance", original.id},
      {"algorithm", result.algorithm},
      {"variant", result.variant.name()},
      {"swap_opt", result.swap_opt_applied},
      {"total_capacity", result.total_capacity},
      {"selection", std::move(selection)},
      {"assignment", {{"group", std::move(groups)}, {"item", std::move(items)}, {"knapsack", std::move(knaps)}}},
      {"loads", loads},
      {"metrics", std::move(metrics)},
      {"timings_ms",
       {{"selection", result.timings.selection_ms},
        {"assignment", result.timings.assignment_ms},
        {"swap_opt", result.timings.swap_opt_ms},
        {"total", result.timings.total_ms()}}},
      {"local_search", {{"jumps", result.local_search.jumps}, {"swaps", result.local_search.swaps}}},
      {"selection_nodes", result.selection_nodes},
  };
  if (result.variant.algorithm == Algorithm::MkpD) doc["thresholds"] = std::move(thresholds);
  if (rep.changed()) doc["normalization"] = {{"removed_knapsacks", rep.removed_knapsacks}, {"removed_groups", rep.removed_groups}};
  return doc;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (const char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw InputError("percentile of an empty sample");
  if (!(p > 0.0 && p <= 100.0)) throw InputError("percentile must be in (0, 100]");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

}  // namespace gmkp
