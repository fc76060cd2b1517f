#include "darp/tabu.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>

#include "darp/construction.hpp"
#include "darp/time_window.hpp"

namespace darp {

PenaltyState update_penalties(const PenaltyState& state, const Violations& current) {
  PenaltyState next = state;
  const double factor = 1.0 + state.delta;
  auto adapt = [&](double& coefficient, double violation) {
    coefficient = violation > 0.0 ? coefficient * factor : coefficient / factor;
    coefficient = std::clamp(coefficient, kPenaltyFloor, kPenaltyCap);
  };
  adapt(next.coefficients.alpha, current.load);
  adapt(next.coefficients.beta, current.duration);
  adapt(next.coefficients.gamma, current.lateness);
  adapt(next.coefficients.tau, current.ride);
  return next;
}

void TabuList::forbid(RequestId request, VehicleId vehicle, std::uint64_t until_iteration) {
  until_[{request, vehicle}] = until_iteration;
}

bool TabuList::is_tabu(RequestId request, VehicleId vehicle, std::uint64_t iteration) const {
  auto it = until_.find({request, vehicle});
  return it != until_.end() && iteration <= it->second;
}

bool TabuList::expire_oldest(std::uint64_t iteration) {
  auto oldest = until_.end();
  for (auto it = until_.begin(); it != until_.end(); ++it) {
    if (it->second < iteration) continue;
    if (oldest == until_.end() || it->second < oldest->second) oldest = it;
  }
  if (oldest == until_.end()) return false;
  until_.erase(oldest);
  return true;
}

std::size_t TabuList::active(std::uint64_t iteration) const {
  return static_cast<std::size_t>(
      std::count_if(until_.begin(), until_.end(), [&](const auto& entry) { return iteration <= entry.second; }));
}

bool is_aspirated(const Candidate& candidate, const AspirationLevel& level) {
  if (level.best_feasible_cost) return candidate.move.feasible && candidate.cost < *level.best_feasible_cost;
  return candidate.move.objective < level.best_objective;
}

SearchConfig SearchConfig::from_variant(const std::string& label) {
  std::string key;
  for (char c : label)
    if (c != '_' && c != '-') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  SearchConfig config;
  if (key == "its") {
    config.level = EvaluationLevel::Level3;
    config.insertion = InsertionMode::TwoStep;
    config.use_construction_heuristic = true;
    config.use_time_window_adjustment = true;
    return config;
  }
  if (key.size() == 4 && key.starts_with("ts") && key[2] >= '1' && key[2] <= '3' && (key[3] == '1' || key[3] == '2')) {
    config.level = static_cast<EvaluationLevel>(key[2] - '0');
    config.insertion = key[3] == '1' ? InsertionMode::OneStep : InsertionMode::TwoStep;
    return config;
  }
  throw ContractError("unknown variant '" + label + "' (expected ts11..ts32 or its)");
}

std::string SearchConfig::label() const {
  const bool ts32 = level == EvaluationLevel::Level3 && insertion == InsertionMode::TwoStep;
  if (ts32 && use_construction_heuristic && use_time_window_adjustment) return "ITS";
  std::string out = "TS_" + std::to_string(static_cast<int>(level)) + (insertion == InsertionMode::OneStep ? "1" : "2");
  if (use_construction_heuristic) out += "+CH";
  if (use_time_window_adjustment) out += "+TW";
  return out;
}

int SearchConfig::effective_tenure(int n_requests) const {
  if (tenure >= 0) return tenure;
  if (n_requests <= 1) return 1;
  return std::max(1, static_cast<int>(std::lround(7.5 * std::log10(static_cast<double>(n_requests)))));
}

void SearchConfig::check() const {
  if (!(time_limit_seconds > 0.0)) throw ContractError("time limit must be positive");
  if (intensification_period < 1) throw ContractError("intensification period must be at least 1");
  if (!(delta > 0.0)) throw ContractError("penalty adaptation factor must be positive");
  if (diversification_weight < 0.0) throw ContractError("diversification weight must be nonnegative");
  if (!(work_units_per_ms > 0.0)) throw ContractError("work clock rate must be positive");
}

std::optional<double> ConvergenceTrace::best_at(double ms) const {
  std::optional<double> best;
  for (const TraceEvent& e : events) {
    if (e.elapsed_ms > ms) break;
    best = e.best_cost;
  }
  return best;
}

namespace {

/// Improves one route by repeated best reinsertion of each of its requests.
bool improve_route(SolutionState& state, VehicleId k, const Penalties& penalties) {
  const Instance& inst = state.instance();
  ScheduleEvaluator& evaluator = state.evaluator();
  bool changed = false;
  for (bool improved = true; improved;) {
    improved = false;
    const RouteSummary& current = state.route_summary(k);
    double current_value = weighted(current.cost, current.violations, penalties);
    std::vector<RequestId> requests;
    for (VertexId v : state.solution().routes[static_cast<std::size_t>(k)].vertex_sequence)
      if (inst.is_pickup(v)) requests.push_back(v);

    for (RequestId request : requests) {
      const std::vector<VertexId> base = state.without_request(k, request);
      const int r = static_cast<int>(base.size());
      std::vector<VertexId> seq;
      std::vector<VertexId> best_seq;
      double best_value = current_value;
      for (int p = 0; p <= r; ++p) {
        for (int d = p + 1; d <= r + 1; ++d) {
          seq.assign(base.begin(), base.end());
          seq.insert(seq.begin() + p, inst.pickup(request));
          seq.insert(seq.begin() + d, inst.dropoff(request));
          const RouteSummary s = evaluator.summarize(seq, state.level());
          const double value = weighted(s.cost, s.violations, penalties);
          if (value < best_value - 1e-9) {
            best_value = value;
            best_seq = seq;
          }
        }
      }
      if (!best_seq.empty()) {
        state.set_route(k, std::move(best_seq));
        current_value = best_value;
        improved = true;
        changed = true;
      }
    }
  }
  return changed;
}

class SearchClock {
 public:
  SearchClock(ClockKind kind, double units_per_ms)
      : kind_(kind), units_per_ms_(units_per_ms), start_(std::chrono::steady_clock::now()) {}

  double elapsed_ms(std::uint64_t work) const {
    if (kind_ == ClockKind::Work) return static_cast<double>(work) / units_per_ms_;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  ClockKind kind_;
  double units_per_ms_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

void intensify_routes(SolutionState& state, const std::vector<VehicleId>& vehicles, const Penalties& penalties) {
  for (VehicleId k : vehicles) improve_route(state, k, penalties);
}

Solution intensify(const Instance& instance, const Solution& solution, const Penalties& penalties,
                   EvaluationLevel level, EvaluationOptions options) {
  SolutionState state(instance, solution, level, options);
  std::vector<VehicleId> all(static_cast<std::size_t>(instance.n_vehicles));
  for (VehicleId k = 0; k < instance.n_vehicles; ++k) all[static_cast<std::size_t>(k)] = k;
  intensify_routes(state, all, penalties);
  return state.solution();
}

SearchResult search(const Instance& original, const SearchConfig& config) {
  config.check();
  original.check_invariants();
  SearchClock clock(config.clock, config.work_units_per_ms);
  const double limit_ms = config.time_limit_seconds * 1000.0;

  const Instance instance = config.use_time_window_adjustment ? adjust_windows(original) : original;
  std::uint64_t construction_work = 0;
  Solution initial;
  if (config.use_construction_heuristic) {
    initial = construct_greedy(instance, config.seed, EvaluationLevel::Level3, config.evaluation, &construction_work);
  } else {
    initial = construct_random(instance, config.seed);
  }

  SolutionState state(instance, std::move(initial), config.level, config.evaluation);
  auto elapsed = [&] { return clock.elapsed_ms(construction_work + state.evaluator().work()); };

  SearchResult result;
  PenaltyState penalties;
  penalties.delta = config.delta;
  AspirationLevel aspiration;
  aspiration.best_objective = state.objective(penalties.coefficients);

  const int n = instance.n_requests;
  const int m = instance.n_vehicles;
  const auto tenure = static_cast<std::uint64_t>(config.effective_tenure(n));
  const double diversification_scale = config.diversification_weight * std::sqrt(static_cast<double>(n) * m);
  std::vector<std::uint64_t> frequency(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(m), 0);
  auto freq = [&](RequestId i, VehicleId k) -> std::uint64_t& {
    return frequency[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(k)];
  };
  TabuList tabu;
  std::vector<char> touched(static_cast<std::size_t>(m), 0);

  auto record_if_better = [&] {
    if (!state.feasible()) return;
    if (result.best_cost && state.cost() >= *result.best_cost - 1e-9) return;
    result.best_cost = state.cost();
    result.best = state.solution();
    aspiration.best_feasible_cost = state.cost();
    TraceEvent event{elapsed(), state.cost(), state.objective(penalties.coefficients), true};
    result.trace.events.push_back(event);
    if (!result.trace.first_feasible) result.trace.first_feasible = event;
  };
  record_if_better();

  std::uint64_t iteration = 0;
  auto done = [&] { return config.stop_at_first_feasible && result.best.has_value(); };
  while (!done() && elapsed() < limit_ms && (config.max_iterations == 0 || iteration < config.max_iterations)) {
    ++iteration;
    const double current = state.objective(penalties.coefficients);

    std::optional<Candidate> chosen;
    double chosen_score = std::numeric_limits<double>::infinity();
    bool any_candidate = false;
    for (;;) {
      for_each_candidate(state, config.insertion, penalties.coefficients, [&](const Candidate& c) {
        any_candidate = true;
        if (tabu.is_tabu(c.move.request, c.move.target, iteration) && !is_aspirated(c, aspiration)) return;
        double score = c.move.objective;
        if (score >= current) {
          const double rho = static_cast<double>(freq(c.move.request, c.move.target)) / static_cast<double>(iteration);
          score += diversification_scale * c.cost * rho;
        }
        if (score < chosen_score) {
          chosen_score = score;
          chosen = c;
        }
      });
      if (chosen || !any_candidate || !tabu.expire_oldest(iteration)) break;
    }
    if (!chosen) break;

    const Move& move = chosen->move;
    state.apply(move);
    tabu.forbid(move.request, move.source, iteration + tenure);
    ++freq(move.request, move.target);
    touched[static_cast<std::size_t>(move.source)] = 1;
    touched[static_cast<std::size_t>(move.target)] = 1;

    penalties = update_penalties(penalties, state.violations());

    if (iteration % static_cast<std::uint64_t>(config.intensification_period) == 0) {
      std::vector<VehicleId> vehicles;
      for (VehicleId k = 0; k < m; ++k)
        if (touched[static_cast<std::size_t>(k)]) vehicles.push_back(k);
      intensify_routes(state, vehicles, penalties.coefficients);
      std::fill(touched.begin(), touched.end(), 0);
    }

    aspiration.best_objective = std::min(aspiration.best_objective, state.objective(penalties.coefficients));
    record_if_better();
  }

  result.trace.iterations = iteration;
  result.trace.elapsed_ms = elapsed();
  return result;
}

}  // namespace darp
