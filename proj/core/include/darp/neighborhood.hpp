#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "darp/model.hpp"
#include "darp/schedule.hpp"

namespace darp {

/// OneStep scores every (pickup, drop-off) position pair in the target route.
/// TwoStep places the critical vertex first, then its twin on the allowed side.
enum class InsertionMode { OneStep, TwoStep };

/// Relocation of one request to another vehicle. Positions index the target
/// route after insertion, so pickup_position < dropoff_position.
struct Move {
  RequestId request = 0;
  VehicleId source = 0;
  VehicleId target = 0;
  int pickup_position = 0;
  int dropoff_position = 1;
  double objective = 0.0;  // f(s) of the solution after the move
  bool feasible = false;
};

/// A move together with the totals of the solution it produces.
struct Candidate {
  Move move;
  double cost = 0.0;
  Violations violations;
};

/// A solution plus one cached summary per route, evaluated at a fixed level.
class SolutionState {
 public:
  SolutionState(const Instance& instance, Solution solution, EvaluationLevel level, EvaluationOptions options = {});

  const Instance& instance() const { return *instance_; }
  const Solution& solution() const { return solution_; }
  EvaluationLevel level() const { return level_; }
  ScheduleEvaluator& evaluator() { return evaluator_; }
  const ScheduleEvaluator& evaluator() const { return evaluator_; }

  const RouteSummary& route_summary(VehicleId k) const { return summaries_[static_cast<std::size_t>(k)]; }
  double cost() const { return cost_; }
  const Violations& violations() const { return violations_; }
  double objective(const Penalties& p) const { return weighted(cost_, violations_, p); }
  bool feasible() const { return violations_.feasible(); }

  /// f(s) after `move`, re-evaluating only the source and target routes.
  Candidate score(const Move& move, const Penalties& penalties);
  void apply(const Move& move);
  void set_route(VehicleId k, std::vector<VertexId> sequence);

  /// Route sequence with the request's two vertices removed.
  std::vector<VertexId> without_request(VehicleId k, RequestId request) const;
  void check_move(const Move& move) const;

 private:
  void refresh_totals();

  const Instance* instance_;
  Solution solution_;
  EvaluationLevel level_;
  ScheduleEvaluator evaluator_;
  std::vector<RouteSummary> summaries_;
  double cost_ = 0.0;
  Violations violations_;
};

struct NeighborhoodStats {
  std::uint64_t target_evaluations = 0;  // target-route sequences scored
  std::uint64_t pairs = 0;               // (request, target vehicle) pairs visited
};

using CandidateVisitor = std::function<void(const Candidate&)>;

/// Streams every candidate of the SPI neighborhood in request-ascending,
/// vehicle-ascending order. Scores use the state's evaluation level.
void for_each_candidate(SolutionState& state, InsertionMode mode, const Penalties& penalties,
                        const CandidateVisitor& visit, NeighborhoodStats* stats = nullptr);

/// Best insertion of `request` into vehicle `target`, for one (request, vehicle) pair.
void visit_insertions(SolutionState& state, RequestId request, VehicleId target, InsertionMode mode,
                      const Penalties& penalties, const CandidateVisitor& visit, NeighborhoodStats* stats = nullptr);

std::vector<Move> enumerate_moves(const Instance& instance, const Solution& solution, InsertionMode mode,
                                  EvaluationLevel level, const Penalties& penalties = {},
                                  NeighborhoodStats* stats = nullptr, EvaluationOptions options = {});

double score_move(SolutionState& state, const Move& move, const Penalties& penalties);

/// f(s) of a whole solution evaluated from scratch.
double evaluate_solution(const Instance& instance, const Solution& solution, EvaluationLevel level,
                         const Penalties& penalties, EvaluationOptions options = {});

}  // namespace darp
