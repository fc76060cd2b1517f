#include "darp/schedule.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace darp {

void ScheduleEvaluator::run(std::span<const VertexId> sequence, EvaluationLevel level) {
  const Instance& inst = *instance_;
  const std::size_t size = sequence.size() + 2;
  ++evaluations_;

  nodes_.resize(size);
  nodes_.front() = 0;
  nodes_.back() = 0;
  std::copy(sequence.begin(), sequence.end(), nodes_.begin() + 1);
  arrival_.assign(size, 0.0);
  wait_.assign(size, 0.0);
  start_.assign(size, 0.0);
  depart_.assign(size, 0.0);
  ride_.assign(size, 0.0);
  partner_.assign(size, -1);

  if (position_of_.size() != static_cast<std::size_t>(inst.vertex_count()))
    position_of_.assign(static_cast<std::size_t>(inst.vertex_count()), -1);
  for (std::size_t p = 1; p + 1 < size; ++p) position_of_[static_cast<std::size_t>(nodes_[p])] = static_cast<int>(p);
  for (std::size_t p = 1; p + 1 < size; ++p) {
    const VertexId v = nodes_[p];
    const VertexId twin = inst.is_pickup(v) ? inst.dropoff(v) : inst.pickup(inst.request_of(v));
    partner_[p] = position_of_[static_cast<std::size_t>(twin)];
  }
  for (std::size_t p = 1; p + 1 < size; ++p) position_of_[static_cast<std::size_t>(nodes_[p])] = -1;

  // Steps 1-2: leave the depot as early as possible and sweep forward.
  start_[0] = inst.vertex(0).window_earliest;
  depart_[0] = start_[0];
  sweep(1);

  if (level != EvaluationLevel::Level1) {
    // Steps 3-5: push the depot departure as late as the slack allows.
    double total_wait = 0.0;
    for (std::size_t p = 1; p + 1 < size; ++p) total_wait += wait_[p];
    const double delay = std::min(forward_slack(0), total_wait);
    start_[0] = inst.vertex(0).window_earliest + delay;
    depart_[0] = start_[0];
    sweep(1);
  }
  compute_ride_times();

  if (level == EvaluationLevel::Level3) {
    // Step 7: delay each pickup to shorten its passenger's ride.
    for (std::size_t j = 1; j + 1 < size; ++j) {
      if (!inst.is_pickup(nodes_[j])) continue;
      double downstream_wait = 0.0;
      for (std::size_t p = j + 1; p + 1 < size; ++p) downstream_wait += wait_[p];
      if (downstream_wait <= 0.0) continue;
      const double delay = std::min(forward_slack(j), downstream_wait);
      if (delay <= 0.0) continue;
      wait_[j] += delay;
      start_[j] = arrival_[j] + wait_[j];
      depart_[j] = start_[j] + inst.vertex(nodes_[j]).service_duration;
      sweep(j + 1);
      compute_ride_times();
    }
  }
}

void ScheduleEvaluator::sweep(std::size_t from) {
  const Instance& inst = *instance_;
  const std::size_t size = nodes_.size();
  for (std::size_t p = from; p < size; ++p) {
    const Vertex& v = inst.vertex(nodes_[p]);
    arrival_[p] = depart_[p - 1] + inst.travel(nodes_[p - 1], nodes_[p]);
    start_[p] = std::max(arrival_[p], v.window_earliest);
    wait_[p] = start_[p] - arrival_[p];
    depart_[p] = start_[p] + v.service_duration;
  }
  work_ += size - from;
}

double ScheduleEvaluator::forward_slack(std::size_t from) const {
  const Instance& inst = *instance_;
  const std::size_t size = nodes_.size();
  const bool ride_aware = options_.slack_rule == SlackRule::RideAware;
  double slack = std::numeric_limits<double>::infinity();
  double cumulative_wait = 0.0;
  for (std::size_t p = from; p < size; ++p) {
    if (p > from) cumulative_wait += wait_[p];
    if (cumulative_wait >= slack) break;  // waits only add from here on
    double room = inst.vertex(nodes_[p]).window_latest - start_[p];
    // passengers picked up before `from` and dropped at p must not ride longer
    if (ride_aware && p + 1 < size && partner_[p] >= 0 && static_cast<std::size_t>(partner_[p]) < from &&
        inst.is_dropoff(nodes_[p]))
      room = std::min(room, inst.max_ride_time - ride_[p]);
    slack = std::min(slack, cumulative_wait + std::max(0.0, room));
  }
  return slack;
}

void ScheduleEvaluator::compute_ride_times() {
  const Instance& inst = *instance_;
  for (std::size_t p = 1; p + 1 < nodes_.size(); ++p) {
    if (inst.is_dropoff(nodes_[p]) && partner_[p] >= 0)
      ride_[p] = start_[p] - depart_[static_cast<std::size_t>(partner_[p])];
  }
}

RouteSummary ScheduleEvaluator::measure() const {
  const Instance& inst = *instance_;
  const std::size_t size = nodes_.size();
  RouteSummary summary;
  int load = 0;
  int peak = 0;
  for (std::size_t p = 1; p < size; ++p) {
    summary.cost += inst.travel(nodes_[p - 1], nodes_[p]);
    if (p + 1 == size) break;
    const Vertex& v = inst.vertex(nodes_[p]);
    if (partner_[p] >= 0) {
      load += v.load_change;
      peak = std::max(peak, load);
    }
    summary.violations.lateness += std::max(0.0, start_[p] - v.window_latest);
    if (inst.is_dropoff(nodes_[p]) && partner_[p] >= 0)
      summary.violations.ride += std::max(0.0, ride_[p] - inst.max_ride_time);
  }
  summary.violations.load = std::max(0, peak - inst.vehicle_capacity);
  const double duration = size > 2 ? start_[size - 1] - depart_[0] : 0.0;
  summary.violations.duration = std::max(0.0, duration - inst.max_route_duration);
  return summary;
}

RouteSummary ScheduleEvaluator::summarize(std::span<const VertexId> sequence, EvaluationLevel level) {
  run(sequence, level);
  return measure();
}

RouteEvaluation ScheduleEvaluator::evaluate(std::span<const VertexId> sequence, EvaluationLevel level) {
  run(sequence, level);
  const RouteSummary summary = measure();
  const Instance& inst = *instance_;
  const std::size_t size = nodes_.size();

  RouteEvaluation eval;
  eval.arrival = arrival_;
  eval.wait = wait_;
  eval.service_start = start_;
  eval.departure = depart_;
  eval.cost = summary.cost;
  eval.violations = summary.violations;
  eval.duration = size > 2 ? start_[size - 1] - depart_[0] : 0.0;
  int load = 0;
  for (std::size_t p = 1; p + 1 < size; ++p) {
    if (partner_[p] < 0) continue;
    load += inst.vertex(nodes_[p]).load_change;
    eval.peak_load = std::max(eval.peak_load, load);
    if (inst.is_dropoff(nodes_[p])) eval.ride_times.emplace_back(inst.request_of(nodes_[p]), ride_[p]);
  }
  return eval;
}

RouteEvaluation evaluate_route(const Instance& instance, const Route& route, EvaluationLevel level,
                               EvaluationOptions options) {
  if (!route_is_well_formed(instance, route, true))
    throw ContractError("route of vehicle " + std::to_string(route.vehicle_id) +
                        " breaks pairing or precedence");
  ScheduleEvaluator evaluator(instance, options);
  return evaluator.evaluate(route.vertex_sequence, level);
}

Violations violations(std::span<const RouteEvaluation> evaluations) {
  Violations total;
  for (const RouteEvaluation& e : evaluations) total += e.violations;
  return total;
}

double objective(double cost, const Violations& v, const Penalties& penalties) {
  if (!(penalties.alpha > 0.0) || !(penalties.beta > 0.0) || !(penalties.gamma > 0.0) || !(penalties.tau > 0.0))
    throw ContractError("penalty coefficients must be positive");
  return weighted(cost, v, penalties);
}

}  // namespace darp
