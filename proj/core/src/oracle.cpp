#include "darp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace darp::oracle {

namespace {

/// max obj.y  s.t.  rows.y <= rhs, y >= 0, with rhs >= 0 so the slack basis is feasible.
/// Dense tableau simplex with Bland's rule.
double maximize_from_slack_basis(std::vector<std::vector<double>> rows, std::vector<double> rhs,
                                 const std::vector<double>& obj) {
  constexpr double eps = 1e-10;
  const std::size_t m = rows.size();
  const std::size_t n = obj.size();
  for (auto& row : rows) row.resize(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) rows[i][n + i] = 1.0;
  std::vector<double> reduced(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) reduced[j] = -obj[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  double value = 0.0;

  for (int guard = 0; guard < 100000; ++guard) {
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (reduced[j] < -eps) {
        enter = j;
        break;
      }
    }
    if (enter == n + m) return value;

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i][enter] <= eps) continue;
      const double ratio = rhs[i] / rows[i][enter];
      if (ratio < best_ratio - eps || (ratio <= best_ratio + eps && leave < m && basis[i] < basis[leave])) {
        best_ratio = std::min(best_ratio, ratio);
        leave = i;
      }
    }
    if (leave == m) throw std::runtime_error("schedule program is unbounded");

    const double pivot = rows[leave][enter];
    for (double& a : rows[leave]) a /= pivot;
    rhs[leave] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double factor = rows[i][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n + m; ++j) rows[i][j] -= factor * rows[leave][j];
      rhs[i] -= factor * rhs[leave];
      if (rhs[i] < 0.0 && rhs[i] > -eps) rhs[i] = 0.0;
    }
    const double factor = reduced[enter];
    for (std::size_t j = 0; j < n + m; ++j) reduced[j] -= factor * rows[leave][j];
    value -= factor * rhs[leave];
    basis[leave] = enter;
  }
  throw std::runtime_error("schedule program did not converge");
}

/// Primal: min cost.x  s.t. A x >= b, x >= 0, solved through its dual.
struct CoveringProgram {
  std::vector<double> cost;
  std::vector<std::vector<std::pair<std::size_t, double>>> constraints;  // sparse rows of A
  std::vector<double> bound;

  std::size_t add_variable(double c) {
    cost.push_back(c);
    return cost.size() - 1;
  }
  void add_constraint(std::vector<std::pair<std::size_t, double>> row, double b) {
    constraints.push_back(std::move(row));
    bound.push_back(b);
  }
  double solve() const {
    // dual: max b.y  s.t. A^T y <= cost, y >= 0
    std::vector<std::vector<double>> rows(cost.size(), std::vector<double>(constraints.size(), 0.0));
    for (std::size_t c = 0; c < constraints.size(); ++c)
      for (const auto& [var, coeff] : constraints[c]) rows[var][c] += coeff;
    return maximize_from_slack_basis(std::move(rows), cost, bound);
  }
};

struct SubsetRoute {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<VertexId> sequence;
};

void enumerate_orders(const Instance& inst, ScheduleEvaluator& evaluator, std::vector<RequestId>& requests,
                      std::vector<char>& picked, std::vector<char>& dropped, std::vector<VertexId>& seq,
                      SubsetRoute& best) {
  if (seq.size() == 2 * requests.size()) {
    const RouteSummary s = evaluator.summarize(seq, EvaluationLevel::Level3);
    if (s.violations.feasible() && s.cost < best.cost - 1e-12) {
      best.cost = s.cost;
      best.sequence = seq;
    }
    return;
  }
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!picked[i]) {
      picked[i] = 1;
      seq.push_back(inst.pickup(requests[i]));
      enumerate_orders(inst, evaluator, requests, picked, dropped, seq, best);
      seq.pop_back();
      picked[i] = 0;
    } else if (!dropped[i]) {
      dropped[i] = 1;
      seq.push_back(inst.dropoff(requests[i]));
      enumerate_orders(inst, evaluator, requests, picked, dropped, seq, best);
      seq.pop_back();
      dropped[i] = 0;
    }
  }
}

}  // namespace

std::optional<ExactResult> exact_solve(const Instance& instance, EvaluationOptions options) {
  const int n = instance.n_requests;
  if (n > kMaxExactRequests)
    throw Refusal("exact_solve handles at most " + std::to_string(kMaxExactRequests) + " requests, got " +
                  std::to_string(n));
  const std::size_t subsets = std::size_t{1} << n;
  ScheduleEvaluator evaluator(instance, options);

  // Cheapest feasible single route per subset of requests (vehicles are identical).
  std::vector<SubsetRoute> route_of(subsets);
  route_of[0].cost = 0.0;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    std::vector<RequestId> requests;
    for (int r = 0; r < n; ++r)
      if (mask & (std::size_t{1} << r)) requests.push_back(r + 1);
    std::vector<char> picked(requests.size(), 0), dropped(requests.size(), 0);
    std::vector<VertexId> seq;
    enumerate_orders(instance, evaluator, requests, picked, dropped, seq, route_of[mask]);
  }

  // Split the full request set into at most m subsets.
  const double inf = std::numeric_limits<double>::infinity();
  const int m = instance.n_vehicles;
  std::vector<std::vector<double>> best(static_cast<std::size_t>(m) + 1, std::vector<double>(subsets, inf));
  std::vector<std::vector<std::size_t>> choice(static_cast<std::size_t>(m) + 1, std::vector<std::size_t>(subsets, 0));
  best[0][0] = 0.0;
  for (int k = 1; k <= m; ++k) {
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      // vehicle k takes `sub` (possibly empty) out of `mask`
      for (std::size_t sub = mask;; sub = (sub - 1) & mask) {
        const double c = best[static_cast<std::size_t>(k) - 1][mask ^ sub] + route_of[sub].cost;
        if (c < best[static_cast<std::size_t>(k)][mask] - 1e-12) {
          best[static_cast<std::size_t>(k)][mask] = c;
          choice[static_cast<std::size_t>(k)][mask] = sub;
        }
        if (sub == 0) break;
      }
    }
  }
  const std::size_t full = subsets - 1;
  if (!std::isfinite(best[static_cast<std::size_t>(m)][full])) return std::nullopt;

  ExactResult result;
  result.cost = best[static_cast<std::size_t>(m)][full];
  result.solution = Solution::empty(instance);
  std::size_t mask = full;
  for (int k = m; k >= 1; --k) {
    const std::size_t sub = choice[static_cast<std::size_t>(k)][mask];
    result.solution.routes[static_cast<std::size_t>(k) - 1].vertex_sequence = route_of[sub].sequence;
    mask ^= sub;
  }
  result.solution.sync_assignment(instance);
  return result;
}

double brute_schedule(const Instance& instance, const Route& route, const ViolationWeights& weights) {
  const auto& seq = route.vertex_sequence;
  if (seq.size() > static_cast<std::size_t>(kMaxBruteRouteVertices))
    throw Refusal("brute_schedule handles at most " + std::to_string(kMaxBruteRouteVertices) + " vertices, got " +
                  std::to_string(seq.size()));
  if (!route_is_well_formed(instance, route, true)) throw ContractError("route breaks pairing or precedence");
  if (weights.duration < 0.0 || weights.lateness < 0.0 || weights.ride < 0.0)
    throw ContractError("violation weights must be nonnegative");
  if (seq.empty()) return 0.0;

  CoveringProgram lp;
  const std::size_t depot_out = lp.add_variable(0.0);
  std::vector<std::size_t> start(seq.size());
  for (auto& s : start) s = lp.add_variable(0.0);
  const std::size_t depot_in = lp.add_variable(0.0);

  const Vertex& depot = instance.vertex(0);
  lp.add_constraint({{depot_out, 1.0}}, depot.window_earliest);
  VertexId prev = 0;
  std::size_t prev_var = depot_out;
  double prev_service = 0.0;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    const Vertex& v = instance.vertex(seq[p]);
    lp.add_constraint({{start[p], 1.0}, {prev_var, -1.0}}, prev_service + instance.travel(prev, seq[p]));
    lp.add_constraint({{start[p], 1.0}}, v.window_earliest);
    const std::size_t late = lp.add_variable(weights.lateness);
    lp.add_constraint({{late, 1.0}, {start[p], -1.0}}, -v.window_latest);
    prev = seq[p];
    prev_var = start[p];
    prev_service = v.service_duration;
  }
  lp.add_constraint({{depot_in, 1.0}, {prev_var, -1.0}}, prev_service + instance.travel(prev, 0));

  for (std::size_t p = 0; p < seq.size(); ++p) {
    if (!instance.is_pickup(seq[p])) continue;
    const auto q = static_cast<std::size_t>(
        std::find(seq.begin(), seq.end(), instance.dropoff(seq[p])) - seq.begin());
    const std::size_t excess = lp.add_variable(weights.ride);
    lp.add_constraint({{excess, 1.0}, {start[q], -1.0}, {start[p], 1.0}},
                      -(instance.vertex(seq[p]).service_duration + instance.max_ride_time));
  }
  const std::size_t overtime = lp.add_variable(weights.duration);
  lp.add_constraint({{overtime, 1.0}, {depot_in, -1.0}, {depot_out, 1.0}}, -instance.max_route_duration);

  return lp.solve();
}

}  // namespace darp::oracle
