// Command-line front end: generate, solve, feasible, sweep, exact, bench.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmkp/errors.hpp"
#include "gmkp/gen.hpp"
#include "gmkp/heuristics.hpp"
#include "gmkp/io.hpp"
#include "gmkp/oracle.hpp"
#include "gmkp/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gmkp;

namespace {

constexpr const char* kManifestSchema = "gmkp-manifest/1";
constexpr const char* kExactSchema = "gmkp-exact/1";
constexpr const char* kFeasibleSchema = "gmkp-feasible/1";
constexpr const char* kSweepSchema = "gmkp-sweep/1";
constexpr const char* kBenchSchema = "gmkp-bench/1";
constexpr const char* kSummarySchema = "gmkp-bench-summary/1";

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text(out, text);
  }
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("GMKP_OUT_DIR"); env && *env) return env;
  return ".";
}

/// An algorithm choice as given on the command line.
struct AlgoSpec {
  std::string name;
  bool best = false;
  bool hundred = false;
  Variant variant;
};

AlgoSpec parse_algo(const std::string& name, const std::string& d_set) {
  AlgoSpec spec{name, false, false, {}};
  if (name == "best") {
    spec.best = true;
  } else if (name == "100mkp") {
    spec.hundred = true;
  } else {
    spec.variant = Variant::parse(name);
    if (spec.variant.algorithm == Algorithm::MkpD) {
      if (d_set.empty()) throw InputError("--algo mkpd needs --d-set");
      spec.variant.thresholds = parse_thresholds(d_set);
    }
  }
  return spec;
}

Variant resolve(const AlgoSpec& spec, const Instance& inst) {
  if (spec.hundred) return Variant::mkp_d_fractions(inst.max_capacity(), 100);
  return spec.variant;
}

SolveResult run_spec(const AlgoSpec& spec, const Instance& inst, const RunOptions& options) {
  if (spec.best) return run_best(inst, default_best_variants(inst), options);
  SolveResult r = run_algorithm(inst, resolve(spec, inst), options);
  if (spec.hundred) r.algorithm = "100mkp";
  return r;
}

ExactOptions exact_options(std::uint64_t node_budget) {
  ExactOptions o;
  if (node_budget > 0) o.node_budget = node_budget;
  return o;
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::size_t count = 1;
  std::uint64_t seed = 1;
  std::int64_t capacity = 100;
  std::string out_dir;
  std::string reward = "R0";
};

void cmd_generate(const GenerateArgs& a) {
  const fs::path dir = a.out_dir.empty() ? default_out_dir() : fs::path(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());
  const RewardTag tag = parse_reward_tag(a.reward);
  const auto points = latin_hypercube(a.count, a.seed);

  json entries = json::array();
  for (std::size_t i = 0; i < a.count; ++i) {
    GeneratorParams p = materialize(points[i], a.capacity);
    p.seed = mix_seed(a.seed, i);
    Instance inst = generate_instance(p);
    const std::uint64_t reward_seed = mix_seed(p.seed, 0x52);
    inst = apply_reward_scheme(inst, RewardScheme{tag, reward_seed});
    inst.id = "inst_" + std::to_string(a.seed) + "_" + std::to_string(i);
    const std::string file = inst.id + ".json";
    write_text(dir / file, instance_to_json(inst));
    entries.push_back({
        {"file", file},
        {"id", inst.id},
        {"params",
         {{"m", p.m},
          {"w_split", p.w_split},
          {"w_min", p.w_min},
          {"w_mode", p.w_mode},
          {"w_max", p.w_max()},
          {"r_load", p.r_load.str()},
          {"r_conc", p.r_conc.str()},
          {"capacity", p.capacity},
          {"seed", p.seed}}},
        {"reward_seed", reward_seed},
        {"items", inst.num_items()},
        {"groups", inst.num_groups()},
    });
  }
  json manifest = {{"schema", kManifestSchema}, {"seed", a.seed},     {"count", a.count},
                   {"capacity", a.capacity},    {"rng", Rng::kName},  {"reward_scheme", to_string(tag)},
                   {"instances", entries}};
  write_text(dir / ("manifest_" + std::to_string(a.seed) + ".json"), manifest.dump(1) + "\n");
}

// ---- solve / feasible / exact -----------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string algo = "3mkp";
  std::string d_set;
  bool swap_opt = false;
  std::int64_t total_capacity = -1;
  std::uint64_t node_budget = 0;
  std::string out;
};

void cmd_solve(const SolveArgs& a) {
  const Instance original = read_instance(a.instance);
  const AlgoSpec spec = parse_algo(a.algo, a.d_set);
  const Normalized norm = prepare(original);
  RunOptions options;
  options.swap_opt = a.swap_opt;
  options.exact = exact_options(a.node_budget);
  if (a.total_capacity >= 0) options.total_capacity = a.total_capacity;
  const SolveResult r = run_spec(spec, norm.instance, options);
  emit(a.out, result_to_json(original, norm, r).dump(1) + "\n");
}

struct FeasibleArgs {
  std::string instance;
  std::string algo = "2mkp";
  std::string d_set;
  std::uint64_t max_probes = 0;
  std::uint64_t node_budget = 0;
  std::string out;
};

void cmd_feasible(const FeasibleArgs& a) {
  const Instance original = read_instance(a.instance);
  const AlgoSpec spec = parse_algo(a.algo, a.d_set);
  if (spec.best) throw InputError("feasible: choose a single algorithm");
  const Normalized norm = prepare(original);
  BinarySearchOptions options;
  options.exact = exact_options(a.node_budget);
  if (a.max_probes > 0) options.max_probes = a.max_probes;
  const BinarySearchResult r = binary_search_feasible(norm.instance, resolve(spec, norm.instance), options);
  json doc = result_to_json(original, norm, r.best);
  doc["schema"] = kFeasibleSchema;
  doc["probes"] = r.probes;
  doc["budget_exhausted"] = r.budget_exhausted;
  if (!r.warning.empty()) {
    doc["warning"] = r.warning;
    std::cerr << "warning: " << r.warning << "\n";
  }
  emit(a.out, doc.dump(1) + "\n");
}

struct ExactArgs {
  std::string instance;
  std::uint64_t node_budget = 50'000'000;
  std::string out;
};

void cmd_exact(const ExactArgs& a) {
  const Instance original = read_instance(a.instance);
  const Normalized norm = prepare(original);
  const ExactGmkp r = exact_gmkp(norm.instance, OracleOptions{a.node_budget});
  json doc = {{"schema", kExactSchema},
              {"instance", original.id},
              {"optimum", r.optimum},
              {"nodes", r.nodes},
              {"witness", result_to_json(original, norm, r.witness)}};
  emit(a.out, doc.dump(1) + "\n");
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string instance;
  std::string algo = "2mkp";
  std::string d_set;
  std::string factors;
  bool no_swap_opt = false;
  std::uint64_t node_budget = 0;
  std::string out;
};

void cmd_sweep(const SweepArgs& a) {
  const Instance original = read_instance(a.instance);
  const AlgoSpec spec = parse_algo(a.algo, a.d_set);
  if (spec.best) throw InputError("sweep: choose a single algorithm");
  const Normalized norm = prepare(original);
  const std::vector<Rational> factors = a.factors.empty() ? default_sweep_factors() : parse_thresholds(a.factors);
  const auto entries = capacity_sweep(norm.instance, resolve(spec, norm.instance), factors, !a.no_swap_opt,
                                      exact_options(a.node_budget));

  std::vector<ObjectivePoint> points;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].result) continue;
    points.push_back({entries[i].result->metrics.reward, entries[i].result->metrics.max_exceeded});
    owner.push_back(i);
  }
  std::vector<bool> on_frontier(entries.size(), false);
  for (const Index p : pareto_indices(points)) on_frontier[owner[p]] = true;

  std::ostringstream csv;
  csv << "schema,factor,total_capacity,reward,max_exceeded,dominated,error\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const SweepEntry& e = entries[i];
    csv << kSweepSchema << ',' << e.factor.to_double() << ',' << e.total_capacity << ',';
    if (e.result) {
      csv << e.result->metrics.reward << ',' << e.result->metrics.max_exceeded << ',' << (on_frontier[i] ? 0 : 1) << ",\n";
    } else {
      csv << ",,," << csv_field(e.error) << '\n';
    }
  }
  emit(a.out, csv.str());
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string dir;
  std::string algos = "lp,kp,2mkp,3mkp,100mkp,best";
  bool swap_opt = false;
  unsigned workers = 1;
  std::uint64_t node_budget = 0;
  std::string out;
  std::string summary;
};

struct BenchRow {
  std::string instance;
  std::string algo;
  std::int64_t reward = 0;
  std::int64_t max_exceeded = 0;
  std::int64_t c_max = 1;
  double time_ms = 0;
  std::string error;
};

BenchRow bench_one(const fs::path& file, const AlgoSpec& spec, const BenchArgs& a) {
  BenchRow row{file.filename().string(), spec.name, 0, 0, 1, 0, {}};
  try {
    const Instance original = read_instance(file);
    const Normalized norm = prepare(original);
    RunOptions options;
    options.swap_opt = a.swap_opt;
    options.exact = exact_options(a.node_budget);
    const SolveResult r = run_spec(spec, norm.instance, options);
    row.reward = r.metrics.reward;
    row.max_exceeded = r.metrics.max_exceeded;
    row.c_max = norm.instance.max_capacity();
    row.time_ms = r.timings.total_ms();
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

void cmd_bench(const BenchArgs& a) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(a.dir, ec)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && entry.path().extension() == ".json" && name.rfind("manifest", 0) != 0) {
      files.push_back(entry.path());
    }
  }
  if (ec) throw InputError("cannot list " + a.dir + ": " + ec.message());
  std::sort(files.begin(), files.end());

  std::vector<AlgoSpec> specs;
  std::string list = a.algos;
  std::replace(list.begin(), list.end(), ',', ' ');
  std::istringstream names(list);
  for (std::string name; names >> name;) specs.push_back(parse_algo(name, ""));
  if (specs.empty()) throw InputError("bench: empty algorithm list");

  const std::size_t tasks = files.size() * specs.size();
  std::vector<BenchRow> rows(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) rows[t] = bench_one(files[t / specs.size()], specs[t % specs.size()], a);
  };
  const unsigned n_workers = std::max(1U, std::min<unsigned>(a.workers, static_cast<unsigned>(std::max<std::size_t>(tasks, 1))));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "schema,instance,algo,reward,max_exceeded,time_ms,error\n";
  for (const BenchRow& r : rows) {
    csv << kBenchSchema << ',' << csv_field(r.instance) << ',' << r.algo << ',';
    if (r.error.empty()) {
      csv << r.reward << ',' << r.max_exceeded << ',' << r.time_ms << ",\n";
    } else {
      csv << ",,," << csv_field(r.error) << '\n';
    }
  }
  emit(a.out, csv.str());

  std::ostringstream sum;
  sum << "schema,algo,metric,count,failures,p50,p75,p90,p95,p99\n";
  for (const AlgoSpec& spec : specs) {
    std::vector<double> times, ratios;
    std::size_t failures = 0;
    for (const BenchRow& r : rows) {
      if (r.algo != spec.name) continue;
      if (!r.error.empty()) {
        ++failures;
        continue;
      }
      times.push_back(r.time_ms);
      ratios.push_back(static_cast<double>(r.max_exceeded) / static_cast<double>(r.c_max));
    }
    auto line = [&](const char* metric, const std::vector<double>& v) {
      sum << kSummarySchema << ',' << spec.name << ',' << metric << ',' << v.size() << ',' << failures;
      for (const double p : {50.0, 75.0, 90.0, 95.0, 99.0}) {
        sum << ',';
        if (!v.empty()) sum << percentile(v, p);
      }
      sum << '\n';
    };
    line("time_ms", times);
    line("exceeded_ratio", ratios);
  }
  if (a.summary.empty()) {
    std::cerr << sum.str();
  } else {
    write_text(a.summary, sum.str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grouped multiple knapsack solvers"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write random instances and a manifest");
  g->add_option("--count", gen.count, "number of instances")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "base seed");
  g->add_option("--capacity", gen.capacity, "capacity of every knapsack")->check(CLI::Range(2, 1'000'000));
  g->add_option("--out-dir", gen.out_dir, "output directory (default $GMKP_OUT_DIR or .)");
  g->add_option("--reward-scheme", gen.reward, "R0, R1, R2 or R3");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "run one algorithm");
  s->add_option("--instance", solve.instance)->required();
  s->add_option("--algo", solve.algo, "lp, kp, 2mkp, 3mkp, mkpd, 100mkp, mkp-prime or best");
  s->add_option("--d-set", solve.d_set, "thresholds for mkpd, e.g. 100/2,100/3");
  s->add_flag("--swap-opt", solve.swap_opt, "improve the assignment by jumps and swaps");
  s->add_option("--total-capacity", solve.total_capacity, "override the aggregate capacity");
  s->add_option("--node-budget", solve.node_budget, "branch-and-bound node limit (0 = none)");
  s->add_option("--out", solve.out, "output file (default stdout)");

  FeasibleArgs feas;
  auto* f = app.add_subcommand("feasible", "binary search for a capacity-feasible solution");
  f->add_option("--instance", feas.instance)->required();
  f->add_option("--algo", feas.algo);
  f->add_option("--d-set", feas.d_set);
  f->add_option("--max-probes", feas.max_probes, "probe limit (0 = none)");
  f->add_option("--node-budget", feas.node_budget);
  f->add_option("--out", feas.out);

  SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "capacity sweep with Pareto flags (CSV)");
  w->add_option("--instance", sweep.instance)->required();
  w->add_option("--algo", sweep.algo);
  w->add_option("--d-set", sweep.d_set);
  w->add_option("--factors", sweep.factors, "comma separated factors (default 0.75..1.25 step 0.05)");
  w->add_flag("--no-swap-opt", sweep.no_swap_opt);
  w->add_option("--node-budget", sweep.node_budget);
  w->add_option("--out", sweep.out);

  ExactArgs exact;
  auto* e = app.add_subcommand("exact", "exact optimum with a feasible witness");
  e->add_option("--instance", exact.instance)->required();
  e->add_option("--node-budget", exact.node_budget);
  e->add_option("--out", exact.out);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "directory of instances x algorithms (CSV)");
  b->add_option("--dir", bench.dir)->required();
  b->add_option("--algos", bench.algos);
  b->add_flag("--swap-opt", bench.swap_opt);
  b->add_option("--workers", bench.workers)->check(CLI::PositiveNumber);
  b->add_option("--node-budget", bench.node_budget);
  b->add_option("--out", bench.out);
  b->add_option("--summary", bench.summary, "percentile summary file (default stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : 2;
  }

  try {
    if (*g) cmd_generate(gen);
    if (*s) cmd_solve(solve);
    if (*f) cmd_feasible(feas);
    if (*w) cmd_sweep(sweep);
    if (*e) cmd_exact(exact);
    if (*b) cmd_bench(bench);
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& err) {
    std::cerr << "budget exceeded: " << err.what() << "\n";
    return 3;
  } catch (const InvariantViolation& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 4;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 4;
  }
  return 0;
}
