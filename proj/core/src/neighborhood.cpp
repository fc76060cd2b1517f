#include "darp/neighborhood.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "darp/time_window.hpp"

namespace darp {

SolutionState::SolutionState(const Instance& instance, Solution solution, EvaluationLevel level,
                             EvaluationOptions options)
    : instance_(&instance), solution_(std::move(solution)), level_(level), evaluator_(instance, options) {
  if (solution_.routes.size() != static_cast<std::size_t>(instance.n_vehicles))
    throw ContractError("solution must hold one route per vehicle");
  solution_.sync_assignment(instance);
  summaries_.resize(solution_.routes.size());
  for (std::size_t k = 0; k < solution_.routes.size(); ++k)
    summaries_[k] = evaluator_.summarize(solution_.routes[k].vertex_sequence, level_);
  refresh_totals();
}

void SolutionState::refresh_totals() {
  cost_ = 0.0;
  violations_ = {};
  for (const RouteSummary& s : summaries_) {
    cost_ += s.cost;
    violations_ += s.violations;
  }
}

std::vector<VertexId> SolutionState::without_request(VehicleId k, RequestId request) const {
  const auto& seq = solution_.routes[static_cast<std::size_t>(k)].vertex_sequence;
  std::vector<VertexId> out;
  out.reserve(seq.size());
  const VertexId p = instance_->pickup(request);
  const VertexId d = instance_->dropoff(request);
  for (VertexId v : seq)
    if (v != p && v != d) out.push_back(v);
  return out;
}

void SolutionState::check_move(const Move& move) const {
  const Instance& inst = *instance_;
  if (move.request < 1 || move.request > inst.n_requests) throw ContractError("move names an unknown request");
  if (move.target < 0 || move.target >= inst.n_vehicles || move.source < 0 || move.source >= inst.n_vehicles)
    throw ContractError("move names an unknown vehicle");
  if (solution_.assignment[static_cast<std::size_t>(move.request)] != move.source)
    throw ContractError("request " + std::to_string(move.request) + " is not on vehicle " + std::to_string(move.source));
  if (move.source == move.target) throw ContractError("source and target vehicle must differ");
  const int target_size = static_cast<int>(solution_.routes[static_cast<std::size_t>(move.target)].size());
  if (move.pickup_position < 0 || move.pickup_position >= move.dropoff_position ||
      move.dropoff_position > target_size + 1)
    throw ContractError("invalid insertion positions");
}

namespace {

std::vector<VertexId> insert_pair(const std::vector<VertexId>& base, VertexId pickup, VertexId dropoff, int pickup_pos,
                                  int dropoff_pos) {
  std::vector<VertexId> seq;
  seq.reserve(base.size() + 2);
  std::size_t b = 0;
  for (int pos = 0; pos < static_cast<int>(base.size()) + 2; ++pos) {
    if (pos == pickup_pos)
      seq.push_back(pickup);
    else if (pos == dropoff_pos)
      seq.push_back(dropoff);
    else
      seq.push_back(base[b++]);
  }
  return seq;
}

}  // namespace

Candidate SolutionState::score(const Move& move, const Penalties& penalties) {
  check_move(move);
  const auto src = static_cast<std::size_t>(move.source);
  const auto tgt = static_cast<std::size_t>(move.target);
  const RouteSummary src_after = evaluator_.summarize(without_request(move.source, move.request), level_);
  const auto target_seq = insert_pair(solution_.routes[tgt].vertex_sequence, instance_->pickup(move.request),
                                      instance_->dropoff(move.request), move.pickup_position, move.dropoff_position);
  const RouteSummary tgt_after = evaluator_.summarize(target_seq, level_);

  Candidate c;
  c.move = move;
  c.cost = cost_ - summaries_[src].cost - summaries_[tgt].cost + src_after.cost + tgt_after.cost;
  c.violations = violations_;
  c.violations -= summaries_[src].violations;
  c.violations -= summaries_[tgt].violations;
  c.violations += src_after.violations;
  c.violations += tgt_after.violations;
  c.move.objective = weighted(c.cost, c.violations, penalties);
  c.move.feasible = c.violations.feasible();
  return c;
}

void SolutionState::apply(const Move& move) {
  check_move(move);
  const auto tgt = static_cast<std::size_t>(move.target);
  auto target_seq = insert_pair(solution_.routes[tgt].vertex_sequence, instance_->pickup(move.request),
                                instance_->dropoff(move.request), move.pickup_position, move.dropoff_position);
  set_route(move.source, without_request(move.source, move.request));
  set_route(move.target, std::move(target_seq));
  solution_.assignment[static_cast<std::size_t>(move.request)] = move.target;
}

void SolutionState::set_route(VehicleId k, std::vector<VertexId> sequence) {
  const auto idx = static_cast<std::size_t>(k);
  solution_.routes[idx].vertex_sequence = std::move(sequence);
  summaries_[idx] = evaluator_.summarize(solution_.routes[idx].vertex_sequence, level_);
  for (VertexId v : solution_.routes[idx].vertex_sequence)
    if (instance_->is_pickup(v)) solution_.assignment[static_cast<std::size_t>(v)] = k;
  refresh_totals();
}

namespace {

void visit_pair(SolutionState& state, RequestId request, VehicleId target, InsertionMode mode,
                const Penalties& penalties, const CandidateVisitor& visit, NeighborhoodStats* stats,
                const RouteSummary& src_after) {
  const Instance& inst = state.instance();
  const VehicleId source = state.solution().assignment[static_cast<std::size_t>(request)];
  ScheduleEvaluator& evaluator = state.evaluator();
  const EvaluationLevel level = state.level();

  const RouteSummary& src_before = state.route_summary(source);
  const RouteSummary& tgt_before = state.route_summary(target);

  // solution totals with the request lifted out and the target route removed
  double base_cost = state.cost() - src_before.cost - tgt_before.cost + src_after.cost;
  Violations base = state.violations();
  base -= src_before.violations;
  base -= tgt_before.violations;
  base += src_after.violations;

  const auto& route = state.solution().routes[static_cast<std::size_t>(target)].vertex_sequence;
  const int r = static_cast<int>(route.size());
  const VertexId pickup = inst.pickup(request);
  const VertexId dropoff = inst.dropoff(request);
  std::vector<VertexId> seq;
  seq.reserve(route.size() + 2);

  if (stats) ++stats->pairs;
  auto emit = [&](int pickup_pos, int dropoff_pos, const RouteSummary& tgt_after) {
    Candidate c;
    c.move = {request, source, target, pickup_pos, dropoff_pos, 0.0, false};
    c.cost = base_cost + tgt_after.cost;
    c.violations = base;
    c.violations += tgt_after.violations;
    c.move.objective = weighted(c.cost, c.violations, penalties);
    c.move.feasible = c.violations.feasible();
    visit(c);
  };
  auto build = [&](int pickup_pos, int dropoff_pos) {
    seq.clear();
    int b = 0;
    for (int pos = 0; pos < r + 2; ++pos) {
      if (pos == pickup_pos)
        seq.push_back(pickup);
      else if (pos == dropoff_pos)
        seq.push_back(dropoff);
      else
        seq.push_back(route[static_cast<std::size_t>(b++)]);
    }
  };

  if (mode == InsertionMode::OneStep || r == 0) {
    for (int p = 0; p <= r; ++p) {
      for (int d = p + 1; d <= r + 1; ++d) {
        build(p, d);
        const RouteSummary tgt_after = evaluator.summarize(seq, level);
        if (stats) ++stats->target_evaluations;
        emit(p, d, tgt_after);
      }
    }
    return;
  }

  // Two-step: best slot for the critical vertex alone, then its twin on the allowed side.
  const CriticalityTag tag = classify_critical(inst, request);
  const VertexId critical = tag.critical_vertex(inst);
  int best_slot = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int p = 0; p <= r; ++p) {
    seq.assign(route.begin(), route.end());
    seq.insert(seq.begin() + p, critical);
    const RouteSummary partial = evaluator.summarize(seq, level);
    if (stats) ++stats->target_evaluations;
    const double value = weighted(partial.cost, partial.violations, penalties);
    if (value < best_value) {
      best_value = value;
      best_slot = p;
    }
  }

  int best_pickup = 0;
  int best_dropoff = 1;
  RouteSummary best_after;
  best_value = std::numeric_limits<double>::infinity();
  auto consider = [&](int p, int d) {
    build(p, d);
    const RouteSummary after = evaluator.summarize(seq, level);
    if (stats) ++stats->target_evaluations;
    const double value = weighted(after.cost, after.violations, penalties);
    if (value < best_value) {
      best_value = value;
      best_pickup = p;
      best_dropoff = d;
      best_after = after;
    }
  };
  if (tag.critical == CriticalSide::Pickup) {
    for (int d = best_slot + 1; d <= r + 1; ++d) consider(best_slot, d);
  } else {
    // the drop-off sits at best_slot; a pickup inserted at p <= best_slot pushes it to best_slot + 1
    for (int p = 0; p <= best_slot; ++p) consider(p, best_slot + 1);
  }
  emit(best_pickup, best_dropoff, best_after);
}

}  // namespace

void visit_insertions(SolutionState& state, RequestId request, VehicleId target, InsertionMode mode,
                      const Penalties& penalties, const CandidateVisitor& visit, NeighborhoodStats* stats) {
  const VehicleId source = state.solution().assignment[static_cast<std::size_t>(request)];
  if (source == target) return;
  const RouteSummary src_after = state.evaluator().summarize(state.without_request(source, request), state.level());
  visit_pair(state, request, target, mode, penalties, visit, stats, src_after);
}

void for_each_candidate(SolutionState& state, InsertionMode mode, const Penalties& penalties,
                        const CandidateVisitor& visit, NeighborhoodStats* stats) {
  const Instance& inst = state.instance();
  if (inst.n_vehicles < 2) return;
  for (RequestId request = 1; request <= inst.n_requests; ++request) {
    const VehicleId source = state.solution().assignment[static_cast<std::size_t>(request)];
    const RouteSummary src_after = state.evaluator().summarize(state.without_request(source, request), state.level());
    for (VehicleId k = 0; k < inst.n_vehicles; ++k) {
      if (k != source) visit_pair(state, request, k, mode, penalties, visit, stats, src_after);
    }
  }
}

std::vector<Move> enumerate_moves(const Instance& instance, const Solution& solution, InsertionMode mode,
                                  EvaluationLevel level, const Penalties& penalties, NeighborhoodStats* stats,
                                  EvaluationOptions options) {
  SolutionState state(instance, solution, level, options);
  std::vector<Move> moves;
  for_each_candidate(
      state, mode, penalties, [&](const Candidate& c) { moves.push_back(c.move); }, stats);
  return moves;
}

double score_move(SolutionState& state, const Move& move, const Penalties& penalties) {
  return state.score(move, penalties).move.objective;
}

double evaluate_solution(const Instance& instance, const Solution& solution, EvaluationLevel level,
                         const Penalties& penalties, EvaluationOptions options) {
  ScheduleEvaluator evaluator(instance, options);
  double cost = 0.0;
  Violations total;
  for (const Route& route : solution.routes) {
    const RouteSummary s = evaluator.summarize(route.vertex_sequence, level);
    cost += s.cost;
    total += s.violations;
  }
  return weighted(cost, total, penalties);
}

}  // namespace darp
