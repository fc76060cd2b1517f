#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "darp/instance_io.hpp"
#include "darp/model.hpp"
#include "darp/tabu.hpp"

namespace darp::bench {

/// Checkpoint times in seconds used for the cost-over-time table.
inline const std::vector<double> kDefaultCheckpoints = {1, 2, 5, 15, 30, 60};

struct ExperimentConfig {
  std::vector<std::string> variants = {"ts32", "its"};
  int replicates = 5;
  double time_limit_seconds = 60.0;
  std::uint64_t base_seed = 1;
  int workers = 1;
  /// Forces both accelerations on (or leaves the variant's own setting when false).
  bool force_construction_heuristic = false;
  bool force_time_window_adjustment = false;
  ClockKind clock = ClockKind::Work;  // reproducible CSVs by default
  double work_units_per_ms = 40000.0;
  std::uint64_t max_iterations = 0;
  std::vector<double> checkpoints = kDefaultCheckpoints;

  /// Engine configuration for one (variant, seed) pair.
  SearchConfig search_config(const std::string& variant, std::uint64_t seed) const;
  /// Checkpoints that fall inside the time limit (the limit itself when none do).
  std::vector<double> active_checkpoints() const;
};

struct RunReport {
  std::string instance;
  std::string variant;  // canonical engine label, e.g. "TS_32" or "ITS"
  std::uint64_t seed = 0;
  std::vector<std::optional<double>> checkpoint_costs;  // aligned with active_checkpoints()
  std::vector<std::optional<double>> checkpoint_gaps;
  std::optional<TraceEvent> first_feasible;
  std::optional<double> first_feasible_gap;
  std::optional<double> final_cost;
  std::optional<double> bks;
  ConvergenceTrace trace;
};

/// Median across replicates of one (instance, variant) pair. A missing value
/// ranks above every cost; the cell stays empty when the median lands on one.
struct AggregateRow {
  std::string instance;
  std::string variant;
  std::optional<double> bks;
  std::vector<std::optional<double>> checkpoint_costs;
  std::optional<double> first_feasible_cost;
  std::optional<double> first_feasible_gap;
  std::optional<double> first_feasible_ms;
  std::optional<double> final_cost;
};

/// Median with missing values ordered last; nullopt when the median touches one.
std::optional<double> median(std::vector<std::optional<double>> values);

RunReport make_report(const Instance& instance, const std::string& variant_label, std::uint64_t seed,
                      const SearchResult& result, const std::vector<double>& checkpoints, const BksRegistry& registry);

/// replicates x variants x instances searches, run on up to `workers` threads.
/// Reports come back ordered by (instance, variant, seed) whatever the scheduling.
std::vector<RunReport> run_experiment(const std::vector<Instance>& instances, const ExperimentConfig& config,
                                      const BksRegistry& registry);

std::vector<AggregateRow> aggregate(const std::vector<RunReport>& reports);

/// Writes traces/<instance>__<variant>__<seed>.csv, checkpoints.csv,
/// first_feasible.csv and summary.json under `directory`.
void emit_reports(const std::vector<RunReport>& reports, const ExperimentConfig& config,
                  const std::filesystem::path& directory);

/// Loads every *.txt instance in a directory, sorted by name.
std::vector<Instance> load_instance_directory(const std::filesystem::path& directory);

}  // namespace darp::bench
