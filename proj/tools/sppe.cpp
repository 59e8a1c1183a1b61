// sppe: command-line front end for the second-price pacing equilibrium solver.
//
// Exit codes: 0 success / verification pass, 1 verification failure,
// 2 input error, 3 goods limit exceeded, 4 internal error.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sppe/error.hpp"
#include "sppe/generator.hpp"
#include "sppe/geometry.hpp"
#include "sppe/good_types.hpp"
#include "sppe/json_io.hpp"
#include "sppe/preprocess.hpp"
#include "sppe/solver.hpp"
#include "sppe/verifier.hpp"

namespace {

using sppe::io::Json;

constexpr int kExitVerifyFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;
constexpr int kExitInternal = 4;

int exit_code_for(sppe::ErrorKind kind) {
  switch (kind) {
    case sppe::ErrorKind::GoodsLimitExceeded: return kExitGuard;
    case sppe::ErrorKind::NoEquilibriumFound:
    case sppe::ErrorKind::InternalInconsistency:
    case sppe::ErrorKind::InconsistentState:
    case sppe::ErrorKind::UnknownWitness: return kExitInternal;
    default: return kExitInput;
  }
}

int report_error(const sppe::Error& e) {
  Json err = Json::object();
  err["error"] = sppe::to_string(e.kind());
  err["message"] = e.what();
  std::cout << err.dump(2) << "\n";
  return exit_code_for(e.kind());
}

struct Range {
  long lo = 0;
  long hi = 0;
};

// "lo..hi" or "lo:hi"
Range parse_range(const std::string& text) {
  auto sep = text.find("..");
  std::size_t skip = 2;
  if (sep == std::string::npos) {
    sep = text.find(':');
    skip = 1;
  }
  if (sep == std::string::npos) throw sppe::Error(sppe::ErrorKind::Parse, "range must look like lo..hi: " + text);
  try {
    return Range{std::stol(text.substr(0, sep)), std::stol(text.substr(sep + skip))};
  } catch (const std::exception&) {
    throw sppe::Error(sppe::ErrorKind::Parse, "range must look like lo..hi: " + text);
  }
}

// "10,20,40", "1..5" or a mix such as "1..3,8".
std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find("..") != std::string::npos) {
      const Range r = parse_range(item);
      for (long v = r.lo; v <= r.hi; ++v) out.push_back(v);
    } else {
      try {
        out.push_back(std::stol(item));
      } catch (const std::exception&) {
        throw sppe::Error(sppe::ErrorKind::Parse, "bad list entry: " + item);
      }
    }
  }
  return out;
}

struct SolveOptions {
  std::string instance_path;
  bool by_types = false;
  bool skip_verify = false;
  bool quiet = false;
  std::size_t max_goods = 4;
  std::size_t parallel = 1;
};

int cmd_solve(const SolveOptions& opt) {
  const sppe::Instance inst = sppe::io::instance_from_json(sppe::io::read_json_file(opt.instance_path));
  sppe::SolverConfig config;
  config.max_goods = opt.max_goods;
  config.parallel = opt.parallel;
  const sppe::SolveResult result = opt.by_types ? sppe::solve_by_types(inst, config) : sppe::solve(inst, config);

  if (!opt.skip_verify) {
    const auto report = sppe::verify_equilibrium(inst, result.equilibrium.alpha, result.equilibrium.x);
    if (!report.pass) {
      Json err = Json::object();
      err["error"] = "VerificationFailed";
      err["message"] = "solver output failed verification at condition " + report.first_failure();
      err["report"] = sppe::io::report_to_json(report);
      std::cout << err.dump(2) << "\n";
      return kExitInternal;
    }
  }
  Json out = sppe::io::equilibrium_to_json(result.equilibrium);
  if (!opt.quiet) out["stats"] = sppe::io::stats_to_json(result.stats);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& equilibrium_path) {
  const sppe::Instance inst = sppe::io::instance_from_json(sppe::io::read_json_file(instance_path));
  const auto alloc = sppe::io::allocation_from_json(sppe::io::read_json_file(equilibrium_path));
  const auto report = sppe::verify_equilibrium(inst, alloc.alpha, alloc.x);
  std::cout << sppe::io::report_to_json(report).dump(2) << "\n";
  return report.pass ? 0 : kExitVerifyFail;
}

struct GenOptions {
  std::size_t n = 0;
  std::size_t c = 0;
  std::size_t m = 0;
  std::size_t types = 0;
  std::uint64_t seed = 1;
  std::string value_range = "1..100";
  std::string budget_range = "1..50";
  unsigned max_denominator = 4;
  double zero_probability = 0.0;
};

sppe::GeneratorConfig generator_config(const GenOptions& opt) {
  sppe::GeneratorConfig cfg;
  cfg.n = opt.n;
  if (opt.types > 0) {
    cfg.m = opt.m > 0 ? opt.m : opt.types;
    cfg.types = opt.types;
  } else {
    cfg.m = opt.c > 0 ? opt.c : opt.m;
  }
  cfg.seed = opt.seed;
  const Range v = parse_range(opt.value_range);
  const Range b = parse_range(opt.budget_range);
  cfg.value_min = v.lo;
  cfg.value_max = v.hi;
  cfg.budget_min = b.lo;
  cfg.budget_max = b.hi;
  cfg.max_denominator = opt.max_denominator;
  cfg.zero_probability = opt.zero_probability;
  return cfg;
}

int cmd_gen(const GenOptions& opt) {
  if (opt.n == 0) throw sppe::Error(sppe::ErrorKind::Parse, "--n must be positive");
  if (opt.c == 0 && opt.m == 0 && opt.types == 0) throw sppe::Error(sppe::ErrorKind::Parse, "give --c, --m or --types");
  const sppe::Instance inst = sppe::generate_instance(generator_config(opt));
  std::cout << sppe::io::instance_to_json(inst).dump() << "\n";
  return 0;
}

struct BenchOptions {
  std::string ns = "10,20,40";
  std::string cs = "1,2";
  std::string seeds = "1..3";
  GenOptions gen;
  std::size_t max_goods = 4;
  std::size_t parallel = 1;
};

int cmd_bench(const BenchOptions& opt) {
  std::cout << "n,c,seed,status,state_space,states_enumerated,states_consistent,cells_with_nonempty_witness_sets,"
               "witness_tuples_tried,lps_solved,lps_feasible,wall_time_ms,winning_state_index,verified\n";
  for (long n : parse_list(opt.ns)) {
    for (long c : parse_list(opt.cs)) {
      for (long seed : parse_list(opt.seeds)) {
        GenOptions g = opt.gen;
        g.n = static_cast<std::size_t>(n);
        g.c = static_cast<std::size_t>(c);
        g.m = 0;
        g.types = 0;
        g.seed = static_cast<std::uint64_t>(seed);
        std::cout << n << "," << c << "," << seed << ",";
        try {
          const sppe::Instance inst = sppe::generate_instance(generator_config(g));
          const sppe::PreprocessReport pre = sppe::preprocess(inst);
          const sppe::CellGeometry geo(pre.reduced);
          sppe::SolverConfig config;
          config.max_goods = opt.max_goods;
          config.parallel = opt.parallel;
          const auto result = sppe::solve(inst, config);
          const bool ok = sppe::verify_equilibrium(inst, result.equilibrium.alpha, result.equilibrium.x).pass;
          const auto& s = result.stats;
          std::cout << "ok," << geo.state_count().get_str() << "," << s.states_enumerated.get_str() << ","
                    << s.states_consistent << "," << s.work.cells_with_nonempty_witness_sets << ","
                    << s.work.witness_tuples_tried << "," << s.work.lps_solved << "," << s.work.lps_feasible << ","
                    << s.wall_time_ms << "," << (s.winning_state_index ? s.winning_state_index->get_str() : "")
                    << "," << (ok ? "true" : "false") << "\n";
        } catch (const sppe::Error& e) {
          std::cout << sppe::to_string(e.kind()) << ",,,,,,,,,,\n";
        }
        std::cout.flush();
      }
    }
  }
  return 0;
}

int cmd_aggregate(const std::string& instance_path) {
  const sppe::Instance inst = sppe::io::instance_from_json(sppe::io::read_json_file(instance_path));
  std::cout << sppe::io::partition_to_json(sppe::partition_good_types(inst)).dump(2) << "\n";
  return 0;
}

void add_gen_flags(CLI::App* cmd, GenOptions& g) {
  cmd->add_option("--value-range", g.value_range, "Valuation range lo..hi");
  cmd->add_option("--budget-range", g.budget_range, "Budget range lo..hi");
  cmd->add_option("--max-den", g.max_denominator, "Largest denominator of generated rationals");
  cmd->add_option("--zero-prob", g.zero_probability, "Probability that a valuation is zero");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact second-price pacing equilibria for markets with few goods (or few good types)"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  auto* solve_cmd = app.add_subcommand("solve", "Compute an equilibrium and print it as JSON");
  solve_cmd->add_option("instance", solve_opt.instance_path, "Instance JSON file")->required();
  solve_cmd->add_flag("--by-types", solve_opt.by_types, "Aggregate identical goods before solving");
  solve_cmd->add_option("--max-goods", solve_opt.max_goods, "Refuse instances with more valued goods (types)");
  solve_cmd->add_option("--parallel", solve_opt.parallel, "Worker threads");
  solve_cmd->add_flag("--skip-verify", solve_opt.skip_verify, "Do not re-check the result before printing");
  solve_cmd->add_flag("--quiet", solve_opt.quiet, "Omit run statistics from the output");

  std::string verify_instance, verify_equilibrium_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check an (alpha, x) pair against the equilibrium conditions");
  verify_cmd->add_option("instance", verify_instance, "Instance JSON file")->required();
  verify_cmd->add_option("equilibrium", verify_equilibrium_path, "Equilibrium JSON file")->required();

  GenOptions gen_opt;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n", gen_opt.n, "Buyers")->required();
  gen_cmd->add_option("--c", gen_opt.c, "Goods (all distinct)");
  gen_cmd->add_option("--m", gen_opt.m, "Goods (use with --types)");
  gen_cmd->add_option("--types", gen_opt.types, "Distinct valuation columns spread over --m goods");
  gen_cmd->add_option("--seed", gen_opt.seed, "Random seed");
  add_gen_flags(gen_cmd, gen_opt);

  BenchOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("bench", "Solve a grid of random instances and print CSV statistics");
  bench_cmd->add_option("--n", bench_opt.ns, "Buyer counts, e.g. 10,20,40");
  bench_cmd->add_option("--c", bench_opt.cs, "Good counts, e.g. 1,2");
  bench_cmd->add_option("--seeds,--seed", bench_opt.seeds, "Seeds, e.g. 1..5");
  bench_cmd->add_option("--max-goods", bench_opt.max_goods, "Goods limit passed to the solver");
  bench_cmd->add_option("--parallel", bench_opt.parallel, "Worker threads");
  add_gen_flags(bench_cmd, bench_opt.gen);

  std::string aggregate_instance;
  auto* aggregate_cmd = app.add_subcommand("aggregate", "Print the good-type partition and aggregated instance");
  aggregate_cmd->add_option("instance", aggregate_instance, "Instance JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_opt);
    if (*verify_cmd) return cmd_verify(verify_instance, verify_equilibrium_path);
    if (*gen_cmd) return cmd_gen(gen_opt);
    if (*bench_cmd) return cmd_bench(bench_opt);
    if (*aggregate_cmd) return cmd_aggregate(aggregate_instance);
  } catch (const sppe::Error& e) {
    return report_error(e);
  }
  return kExitInput;
}
