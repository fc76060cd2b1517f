// Command-line front end: solve one instance, run a benchmark grid, check a
// tiny instance with the exhaustive solver, or generate random instances.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "darp/bench.hpp"
#include "darp/instance_io.hpp"
#include "darp/instgen.hpp"
#include "darp/oracle.hpp"
#include "darp/tabu.hpp"

namespace {

std::string route_text(const darp::Route& route) {
  std::string out = "0";
  for (darp::VertexId v : route.vertex_sequence) out += ' ' + std::to_string(v);
  return out + " 0";
}

darp::ClockKind parse_clock(const std::string& name) {
  return name == "work" ? darp::ClockKind::Work : darp::ClockKind::Wall;
}

darp::SlackRule parse_slack(const std::string& name) {
  return name == "window" ? darp::SlackRule::WindowOnly : darp::SlackRule::RideAware;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text) {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (c != ' ') {
      item.push_back(c);
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dial-a-ride tabu search solver and benchmark harness"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run one search on one instance");
  std::string solve_instance;
  std::string solve_variant = "its";
  bool solve_ch = false;
  bool solve_tw = false;
  double solve_limit = 60.0;
  std::uint64_t solve_seed = 1;
  std::uint64_t solve_iterations = 0;
  std::string solve_clock = "wall";
  std::string solve_slack = "ride";
  solve->add_option("--instance", solve_instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--variant", solve_variant, "ts11|ts12|ts21|ts22|ts31|ts32|its");
  solve->add_flag("--ch", solve_ch, "Start from the greedy construction heuristic");
  solve->add_flag("--tw", solve_tw, "Tighten non-critical time windows before searching");
  solve->add_option("--time-limit", solve_limit, "Seconds")->check(CLI::PositiveNumber);
  solve->add_option("--seed", solve_seed, "Random seed");
  solve->add_option("--max-iterations", solve_iterations, "Stop after this many iterations (0 = no cap)");
  solve->add_option("--clock", solve_clock, "wall|work")->check(CLI::IsMember({"wall", "work"}));
  solve->add_option("--slack", solve_slack, "ride|window forward-slack rule")->check(CLI::IsMember({"ride", "window"}));

  // bench
  auto* bench = app.add_subcommand("bench", "Run variants x replicates x instances and write CSV reports");
  std::string bench_dir;
  std::string bench_variants = "ts32,its";
  int bench_replicates = 5;
  double bench_limit = 60.0;
  std::uint64_t bench_seed = 1;
  std::string bench_out;
  int bench_workers = 1;
  bool bench_ch = false;
  bool bench_tw = false;
  std::uint64_t bench_iterations = 0;
  std::string bench_clock = "work";
  bench->add_option("--instances", bench_dir, "Directory of *.txt instance files")->required();
  bench->add_option("--variants", bench_variants, "Comma-separated variant labels");
  bench->add_option("--replicates", bench_replicates, "Runs per (instance, variant)")->check(CLI::PositiveNumber);
  bench->add_option("--time-limit", bench_limit, "Seconds per run")->check(CLI::PositiveNumber);
  bench->add_option("--seeds", bench_seed, "Base seed; replicate r uses base + r");
  bench->add_option("--out", bench_out, "Output directory")->required();
  bench->add_option("--workers", bench_workers, "Concurrent searches")->check(CLI::PositiveNumber);
  bench->add_flag("--ch", bench_ch, "Force the construction heuristic on for every variant");
  bench->add_flag("--tw", bench_tw, "Force time-window tightening on for every variant");
  bench->add_option("--max-iterations", bench_iterations, "Iteration cap per run (0 = none)");
  bench->add_option("--clock", bench_clock, "work (reproducible, default) | wall")->check(CLI::IsMember({"wall", "work"}));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance (n <= 5)");
  std::string oracle_instance;
  oracle->add_option("--instance", oracle_instance, "Instance file")->required()->check(CLI::ExistingFile);

  // gen
  auto* gen = app.add_subcommand("gen", "Write a random instance in the benchmark file layout");
  int gen_n = 4;
  int gen_m = 2;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Requests")->check(CLI::NonNegativeNumber);
  gen->add_option("--m", gen_m, "Vehicles")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--out", gen_out, "Output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const darp::Instance instance = darp::load_instance(solve_instance);
      darp::SearchConfig config = darp::SearchConfig::from_variant(solve_variant);
      config.use_construction_heuristic |= solve_ch;
      config.use_time_window_adjustment |= solve_tw;
      config.time_limit_seconds = solve_limit;
      config.seed = solve_seed;
      config.max_iterations = solve_iterations;
      config.clock = parse_clock(solve_clock);
      config.evaluation.slack_rule = parse_slack(solve_slack);
      const darp::SearchResult result = darp::search(instance, config);
      const auto registry = darp::BksRegistry::from_environment();
      const auto bks = registry.lookup(instance.name);

      std::printf("instance %s  variant %s  seed %llu\n", instance.name.c_str(), config.label().c_str(),
                  static_cast<unsigned long long>(solve_seed));
      std::printf("iterations %llu  elapsed %.1f ms\n", static_cast<unsigned long long>(result.trace.iterations),
                  result.trace.elapsed_ms);
      if (result.trace.first_feasible)
        std::printf("first feasible %.2f at %.1f ms\n", result.trace.first_feasible->best_cost,
                    result.trace.first_feasible->elapsed_ms);
      if (!result.best) {
        std::printf("no feasible solution found\n");
        return 0;
      }
      std::printf("best cost %.2f", *result.best_cost);
      if (bks) std::printf("  gap %.2f%% (BKS %.2f)", darp::gap_percent(*result.best_cost, *bks), *bks);
      std::printf("\n");
      for (const darp::Route& route : result.best->routes)
        std::printf("vehicle %d: %s\n", route.vehicle_id, route_text(route).c_str());
      return 0;
    }

    if (*bench) {
      darp::bench::ExperimentConfig config;
      config.variants = split_list(bench_variants);
      if (config.variants.empty()) throw std::runtime_error("no variants given");
      config.replicates = bench_replicates;
      config.time_limit_seconds = bench_limit;
      config.base_seed = bench_seed;
      config.workers = bench_workers;
      config.force_construction_heuristic = bench_ch;
      config.force_time_window_adjustment = bench_tw;
      config.max_iterations = bench_iterations;
      config.clock = parse_clock(bench_clock);
      const auto instances = darp::bench::load_instance_directory(bench_dir);
      if (instances.empty()) throw std::runtime_error("no *.txt instances in " + bench_dir);
      const auto registry = darp::BksRegistry::from_environment();
      const auto reports = darp::bench::run_experiment(instances, config, registry);
      darp::bench::emit_reports(reports, config, bench_out);
      std::printf("%zu runs written to %s\n", reports.size(), bench_out.c_str());
      return 0;
    }

    if (*oracle) {
      const darp::Instance instance = darp::load_instance(oracle_instance);
      const auto result = darp::oracle::exact_solve(instance);
      if (!result) {
        std::printf("infeasible\n");
        return 0;
      }
      std::printf("optimal cost %.6f\n", result->cost);
      for (const darp::Route& route : result->solution.routes)
        std::printf("vehicle %d: %s\n", route.vehicle_id, route_text(route).c_str());
      return 0;
    }

    if (*gen) {
      const std::string text = darp::serialize_instance(darp::generate_instance(gen_n, gen_m, gen_seed));
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(gen_out);
        if (!out) throw std::runtime_error("cannot write " + gen_out);
        out << text;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "darp: %s\n", e.what());
    return 1;
  }
  return 0;
}
