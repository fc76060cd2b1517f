#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "darp/model.hpp"
#include "darp/neighborhood.hpp"
#include "darp/schedule.hpp"

namespace darp {

inline constexpr double kPenaltyFloor = 1e-3;
inline constexpr double kPenaltyCap = 1e6;

struct PenaltyState {
  Penalties coefficients;  // all start at 1
  double delta = 0.5;
};

/// Multiplies a coefficient by (1 + delta) while its violation is positive and
/// divides by (1 + delta) otherwise, clamped to [kPenaltyFloor, kPenaltyCap].
PenaltyState update_penalties(const PenaltyState& state, const Violations& current);

/// Forbids putting a request back on a vehicle it just left.
class TabuList {
 public:
  void forbid(RequestId request, VehicleId vehicle, std::uint64_t until_iteration);
  bool is_tabu(RequestId request, VehicleId vehicle, std::uint64_t iteration) const;
  /// Drops the entry that expires first among those still active at `iteration`.
  /// Returns false when nothing was active.
  bool expire_oldest(std::uint64_t iteration);
  std::size_t active(std::uint64_t iteration) const;

 private:
  std::map<std::pair<RequestId, VehicleId>, std::uint64_t> until_;
};

struct AspirationLevel {
  std::optional<double> best_feasible_cost;
  double best_objective = 0.0;  // lowest f(s) seen, used until something is feasible
};

/// A tabu candidate may still be taken when it beats the best solution found:
/// strictly lower feasible cost, or strictly lower f(s) while nothing feasible is known.
bool is_aspirated(const Candidate& candidate, const AspirationLevel& level);

enum class ClockKind { Wall, Work };

struct SearchConfig {
  EvaluationLevel level = EvaluationLevel::Level3;
  InsertionMode insertion = InsertionMode::TwoStep;
  bool use_construction_heuristic = false;
  bool use_time_window_adjustment = false;
  int tenure = -1;  // negative: round(7.5 * log10(n)), at least 1
  double delta = 0.5;
  int intensification_period = 10;
  double diversification_weight = 0.015;
  double time_limit_seconds = 60.0;
  std::uint64_t seed = 1;
  std::uint64_t max_iterations = 0;  // 0: bounded by time only
  bool stop_at_first_feasible = false;
  /// Wall: steady clock. Work: elapsed time derived from the evaluation work
  /// counter, which makes the whole run, trace included, reproducible.
  ClockKind clock = ClockKind::Wall;
  double work_units_per_ms = 40000.0;
  EvaluationOptions evaluation;

  /// "ts11".."ts32" or "its" (case-insensitive, "TS_32" also accepted).
  static SearchConfig from_variant(const std::string& label);
  /// Canonical label: "ITS" when the configuration is TS_32 with both
  /// accelerations, "TS_NI" otherwise, with "+CH"/"+TW" suffixes for partial mixes.
  std::string label() const;
  int effective_tenure(int n_requests) const;
  void check() const;
};

struct TraceEvent {
  double elapsed_ms = 0.0;
  double best_cost = 0.0;
  double current_objective = 0.0;
  bool feasible = true;
};

struct ConvergenceTrace {
  std::vector<TraceEvent> events;  // one per improvement of the best feasible cost
  std::optional<TraceEvent> first_feasible;
  std::uint64_t iterations = 0;
  double elapsed_ms = 0.0;

  /// Best feasible cost known at `ms` or earlier.
  std::optional<double> best_at(double ms) const;
};

struct SearchResult {
  std::optional<Solution> best;
  std::optional<double> best_cost;
  ConvergenceTrace trace;
};

SearchResult search(const Instance& instance, const SearchConfig& config);

/// Route-by-route reinsertion of each request at every position pair, keeping
/// any change that lowers f(s). Never returns a worse solution.
Solution intensify(const Instance& instance, const Solution& solution, const Penalties& penalties,
                   EvaluationLevel level = EvaluationLevel::Level3, EvaluationOptions options = {});

/// Same, on a cached state and only for the listed vehicles.
void intensify_routes(SolutionState& state, const std::vector<VehicleId>& vehicles, const Penalties& penalties);

}  // namespace darp
