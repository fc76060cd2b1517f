#include "darp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace darp::bench {

namespace {

std::string fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

std::string cell(const std::optional<double>& value, int digits = 2) { return value ? fixed(*value, digits) : "-"; }

std::string seconds_label(double s) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%gs", s);
  return buffer;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string name_for(const std::string& variant) {
  std::string out;
  for (char c : variant) out.push_back(c == '+' ? '-' : c);
  return out;
}

}  // namespace

SearchConfig ExperimentConfig::search_config(const std::string& variant, std::uint64_t seed) const {
  SearchConfig config = SearchConfig::from_variant(variant);
  config.use_construction_heuristic |= force_construction_heuristic;
  config.use_time_window_adjustment |= force_time_window_adjustment;
  config.time_limit_seconds = time_limit_seconds;
  config.seed = seed;
  config.clock = clock;
  config.work_units_per_ms = work_units_per_ms;
  config.max_iterations = max_iterations;
  return config;
}

std::vector<double> ExperimentConfig::active_checkpoints() const {
  std::vector<double> out;
  for (double c : checkpoints)
    if (c <= time_limit_seconds + 1e-9) out.push_back(c);
  if (out.empty()) out.push_back(time_limit_seconds);
  return out;
}

std::optional<double> median(std::vector<std::optional<double>> values) {
  if (values.empty()) return std::nullopt;
  const double missing = std::numeric_limits<double>::infinity();
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (const auto& v : values) sorted.push_back(v ? *v : missing);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  double result = sorted[mid];
  if (sorted.size() % 2 == 0) result = 0.5 * (sorted[mid - 1] + sorted[mid]);
  if (result == missing) return std::nullopt;
  return result;
}

RunReport make_report(const Instance& instance, const std::string& variant_label, std::uint64_t seed,
                      const SearchResult& result, const std::vector<double>& checkpoints,
                      const BksRegistry& registry) {
  RunReport report;
  report.instance = instance.name;
  report.variant = variant_label;
  report.seed = seed;
  report.bks = registry.lookup(instance.name);
  report.trace = result.trace;
  report.final_cost = result.best_cost;
  report.first_feasible = result.trace.first_feasible;
  auto gap = [&](const std::optional<double>& cost) -> std::optional<double> {
    if (!cost || !report.bks) return std::nullopt;
    return gap_percent(*cost, *report.bks);
  };
  for (double seconds : checkpoints) {
    const auto cost = result.trace.best_at(seconds * 1000.0);
    report.checkpoint_costs.push_back(cost);
    report.checkpoint_gaps.push_back(gap(cost));
  }
  if (report.first_feasible) report.first_feasible_gap = gap(report.first_feasible->best_cost);
  return report;
}

std::vector<RunReport> run_experiment(const std::vector<Instance>& instances, const ExperimentConfig& config,
                                      const BksRegistry& registry) {
  if (config.replicates < 1) throw ContractError("at least one replicate is required");
  struct Job {
    const Instance* instance;
    std::string variant;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const Instance& instance : instances) {
    for (const std::string& variant : config.variants) {
      SearchConfig::from_variant(variant);  // reject unknown labels before any work starts
      for (int r = 0; r < config.replicates; ++r)
        jobs.push_back({&instance, variant, config.base_seed + static_cast<std::uint64_t>(r)});
    }
  }

  const auto checkpoints = config.active_checkpoints();
  std::vector<RunReport> reports(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const Job& job = jobs[i];
        const SearchConfig sc = config.search_config(job.variant, job.seed);
        const SearchResult result = search(*job.instance, sc);
        reports[i] = make_report(*job.instance, sc.label(), job.seed, result, checkpoints, registry);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(config.workers, static_cast<int>(jobs.size())));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

std::vector<AggregateRow> aggregate(const std::vector<RunReport>& reports) {
  std::vector<AggregateRow> rows;
  std::map<std::pair<std::string, std::string>, std::vector<const RunReport*>> groups;
  std::vector<std::pair<std::string, std::string>> order;
  for (const RunReport& r : reports) {
    auto key = std::make_pair(r.instance, r.variant);
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  for (const auto& key : order) {
    const auto& group = groups[key];
    AggregateRow row;
    row.instance = key.first;
    row.variant = key.second;
    row.bks = group.front()->bks;
    const std::size_t columns = group.front()->checkpoint_costs.size();
    for (std::size_t c = 0; c < columns; ++c) {
      std::vector<std::optional<double>> values;
      for (const RunReport* r : group) values.push_back(r->checkpoint_costs[c]);
      row.checkpoint_costs.push_back(median(values));
    }
    std::vector<std::optional<double>> ff_cost, ff_gap, ff_ms, final_cost;
    for (const RunReport* r : group) {
      ff_cost.push_back(r->first_feasible ? std::optional(r->first_feasible->best_cost) : std::nullopt);
      ff_gap.push_back(r->first_feasible_gap);
      ff_ms.push_back(r->first_feasible ? std::optional(r->first_feasible->elapsed_ms) : std::nullopt);
      final_cost.push_back(r->final_cost);
    }
    row.first_feasible_cost = median(ff_cost);
    row.first_feasible_gap = median(ff_gap);
    row.first_feasible_ms = median(ff_ms);
    row.final_cost = median(final_cost);
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_reports(const std::vector<RunReport>& reports, const ExperimentConfig& config,
                  const std::filesystem::path& directory) {
  if (reports.empty()) throw ContractError("no reports to write");
  std::error_code ec;
  std::filesystem::create_directories(directory / "traces", ec);
  if (ec) throw std::runtime_error("cannot create output directory " + directory.string() + ": " + ec.message());

  for (const RunReport& r : reports) {
    std::string body = "instance,variant,seed,elapsed_ms,best_cost,feasible\n";
    for (const TraceEvent& e : r.trace.events) {
      body += r.instance + ',' + r.variant + ',' + std::to_string(r.seed) + ',' + fixed(e.elapsed_ms, 3) + ',' +
              fixed(e.best_cost, 2) + ',' + (e.feasible ? "1" : "0") + '\n';
    }
    write_file(directory / "traces" / (r.instance + "__" + name_for(r.variant) + "__" + std::to_string(r.seed) + ".csv"),
               body);
  }

  const auto checkpoints = config.active_checkpoints();
  const auto rows = aggregate(reports);
  std::vector<std::string> variants;
  std::vector<std::string> instances;
  for (const AggregateRow& row : rows) {
    if (std::find(variants.begin(), variants.end(), row.variant) == variants.end()) variants.push_back(row.variant);
    if (std::find(instances.begin(), instances.end(), row.instance) == instances.end())
      instances.push_back(row.instance);
  }
  auto find_row = [&](const std::string& instance, const std::string& variant) -> const AggregateRow* {
    for (const AggregateRow& row : rows)
      if (row.instance == instance && row.variant == variant) return &row;
    return nullptr;
  };

  // Median cost at each checkpoint, one column block per variant.
  std::string table = "instance,bks";
  for (const std::string& v : variants)
    for (double s : checkpoints) table += ',' + v + '@' + seconds_label(s);
  table += '\n';
  std::string first = "instance,bks";
  for (const std::string& v : variants) first += ',' + v + "_cost," + v + "_gap," + v + "_ms";
  first += '\n';
  for (const std::string& instance : instances) {
    std::optional<double> bks;
    for (const AggregateRow& row : rows)
      if (row.instance == instance) bks = row.bks;
    table += instance + ',' + cell(bks);
    first += instance + ',' + cell(bks);
    for (const std::string& v : variants) {
      const AggregateRow* row = find_row(instance, v);
      for (std::size_t c = 0; c < checkpoints.size(); ++c)
        table += ',' + (row ? cell(row->checkpoint_costs[c]) : std::string("-"));
      first += ',' + (row ? cell(row->first_feasible_cost) : std::string("-"));
      first += ',' + (row ? cell(row->first_feasible_gap) : std::string("-"));
      first += ',' + (row ? cell(row->first_feasible_ms, 0) : std::string("-"));
    }
    table += '\n';
    first += '\n';
  }
  write_file(directory / "checkpoints.csv", table);
  write_file(directory / "first_feasible.csv", first);

  nlohmann::ordered_json summary;
  summary["variants"] = config.variants;
  summary["replicates"] = config.replicates;
  summary["time_limit_seconds"] = config.time_limit_seconds;
  summary["base_seed"] = config.base_seed;
  summary["force_construction_heuristic"] = config.force_construction_heuristic;
  summary["force_time_window_adjustment"] = config.force_time_window_adjustment;
  summary["clock"] = config.clock == ClockKind::Work ? "work" : "wall";
  summary["work_units_per_ms"] = config.work_units_per_ms;
  summary["max_iterations"] = config.max_iterations;
  summary["checkpoints_seconds"] = checkpoints;
  summary["instances"] = instances;
  const SearchConfig reference = config.search_config(config.variants.front(), config.base_seed);
  summary["engine"] = {{"delta", reference.delta},
                       {"tenure", reference.tenure < 0 ? "round(7.5*log10(n))" : std::to_string(reference.tenure)},
                       {"intensification_period", reference.intensification_period},
                       {"diversification_weight", reference.diversification_weight},
                       {"slack_rule", reference.evaluation.slack_rule == SlackRule::RideAware ? "ride-aware"
                                                                                              : "window-only"}};
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const RunReport& r : reports) {
    runs.push_back({{"instance", r.instance},
                    {"variant", r.variant},
                    {"seed", r.seed},
                    {"iterations", r.trace.iterations},
                    {"final_cost", r.final_cost ? nlohmann::ordered_json(*r.final_cost) : nlohmann::ordered_json()}});
  }
  summary["runs"] = runs;
  write_file(directory / "summary.json", summary.dump(2) + '\n');
}

std::vector<Instance> load_instance_directory(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory))
    throw std::runtime_error("instance directory not found: " + directory.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Instance> out;
  for (const auto& path : files) out.push_back(load_instance(path));
  return out;
}

}  // namespace darp::bench
