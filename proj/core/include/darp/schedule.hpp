#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "darp/model.hpp"

namespace darp {

/// Tolerance used for every schedule comparison, in minutes.
inline constexpr double kScheduleTolerance = 1e-6;

/// How far the staged schedule procedure is taken.
///   Level1: forward sweep from the depot's earliest time (lateness only).
///   Level2: also delays the depot departure by its forward time slack (adds route duration).
///   Level3: also delays each pickup by its forward time slack (adds ride time).
enum class EvaluationLevel { Level1 = 1, Level2 = 2, Level3 = 3 };

/// Forward time slack either looks at time windows only, or also at how much
/// headroom each onboard passenger has left before the ride-time bound.
enum class SlackRule { WindowOnly, RideAware };

struct EvaluationOptions {
  SlackRule slack_rule = SlackRule::RideAware;
};

struct Violations {
  double load = 0.0;      // q
  double duration = 0.0;  // d
  double lateness = 0.0;  // w
  double ride = 0.0;      // t

  Violations& operator+=(const Violations& o) {
    load += o.load;
    duration += o.duration;
    lateness += o.lateness;
    ride += o.ride;
    return *this;
  }
  Violations& operator-=(const Violations& o) {
    load -= o.load;
    duration -= o.duration;
    lateness -= o.lateness;
    ride -= o.ride;
    return *this;
  }
  bool feasible(double tol = kScheduleTolerance) const {
    return load <= tol && duration <= tol && lateness <= tol && ride <= tol;
  }
  bool operator==(const Violations&) const = default;
};

struct Penalties {
  double alpha = 1.0;  // load
  double beta = 1.0;   // duration
  double gamma = 1.0;  // time windows
  double tau = 1.0;    // ride time
};

/// Cost and violations of one route, without the schedule itself.
struct RouteSummary {
  double cost = 0.0;
  Violations violations;
};

/// Full schedule of one route. Position 0 is the departure depot, positions
/// 1..r the route vertices in order and r+1 the return depot.
struct RouteEvaluation {
  std::vector<double> arrival;
  std::vector<double> wait;
  std::vector<double> service_start;
  std::vector<double> departure;
  std::vector<std::pair<RequestId, double>> ride_times;  // in drop-off order
  double cost = 0.0;
  double duration = 0.0;
  int peak_load = 0;
  Violations violations;

  RouteSummary summary() const { return {cost, violations}; }
  bool operator==(const RouteEvaluation&) const = default;
};

/// Reusable scratch space for repeated evaluations. Not thread-safe; one per worker.
///
/// Sequences may hold a lone pickup or drop-off (used while placing the first
/// vertex of a two-step insertion). A lone vertex contributes no load and no
/// ride time.
class ScheduleEvaluator {
 public:
  explicit ScheduleEvaluator(const Instance& instance, EvaluationOptions options = {})
      : instance_(&instance), options_(options) {}

  RouteSummary summarize(std::span<const VertexId> sequence, EvaluationLevel level);
  RouteEvaluation evaluate(std::span<const VertexId> sequence, EvaluationLevel level);

  const Instance& instance() const { return *instance_; }
  const EvaluationOptions& options() const { return options_; }

  /// Number of sequences evaluated so far.
  std::uint64_t evaluations() const { return evaluations_; }
  /// Deterministic work measure: vertex updates performed so far.
  std::uint64_t work() const { return work_; }

 private:
  void run(std::span<const VertexId> sequence, EvaluationLevel level);
  void sweep(std::size_t from);
  double forward_slack(std::size_t from) const;
  void compute_ride_times();
  RouteSummary measure() const;

  const Instance* instance_;
  EvaluationOptions options_;
  std::uint64_t evaluations_ = 0;
  std::uint64_t work_ = 0;

  // scratch, indexed by position (0 and size-1 are the depot)
  std::vector<VertexId> nodes_;
  std::vector<double> arrival_, wait_, start_, depart_;
  std::vector<int> partner_;       // position of the paired vertex, -1 if absent
  std::vector<double> ride_;       // at drop-off positions
  std::vector<int> position_of_;   // vertex id -> position, -1 if absent
};

/// Evaluates a complete route; throws ContractError when the route breaks
/// pairing or precedence.
RouteEvaluation evaluate_route(const Instance& instance, const Route& route, EvaluationLevel level,
                               EvaluationOptions options = {});

Violations violations(std::span<const RouteEvaluation> evaluations);

/// Penalized objective: cost + alpha*q + beta*d + gamma*w + tau*t.
double objective(double cost, const Violations& v, const Penalties& penalties);

/// Same as objective() but without the positivity check, for hot loops.
inline double weighted(double cost, const Violations& v, const Penalties& p) {
  return cost + p.alpha * v.load + p.beta * v.duration + p.gamma * v.lateness + p.tau * v.ride;
}

}  // namespace darp
