#pragma once

#include <vector>

#include "darp/model.hpp"

namespace darp::test {

struct Point {
  double x, y;
  double earliest = 0.0;
  double latest = 1440.0;
  double service = 0.0;
};

/// Hand-built instance: `pickups[i]` and `dropoffs[i]` form request i+1.
inline Instance make_instance(const std::vector<Point>& pickups, const std::vector<Point>& dropoffs, int vehicles = 1,
                              int capacity = 6, double max_duration = 480.0, double max_ride = 90.0,
                              Point depot = {0, 0, 0, 1440, 0}) {
  Instance inst;
  inst.name = "hand";
  inst.n_requests = static_cast<int>(pickups.size());
  inst.n_vehicles = vehicles;
  inst.vehicle_capacity = capacity;
  inst.max_route_duration = max_duration;
  inst.max_ride_time = max_ride;
  inst.horizon = depot.latest;
  auto add = [&](const Point& p, int load) {
    const auto id = static_cast<VertexId>(inst.vertices.size());
    inst.vertices.push_back({id, p.x, p.y, p.service, load, p.earliest, p.latest});
  };
  add(depot, 0);
  for (const Point& p : pickups) add(p, 1);
  for (const Point& p : dropoffs) add(p, -1);
  inst.travel = TravelMatrix::euclidean(inst.vertices);
  inst.check_invariants();
  return inst;
}

inline Solution make_solution(const Instance& inst, std::vector<std::vector<VertexId>> routes) {
  Solution sol = Solution::empty(inst);
  for (std::size_t k = 0; k < routes.size(); ++k) sol.routes[k].vertex_sequence = std::move(routes[k]);
  sol.sync_assignment(inst);
  return sol;
}

}  // namespace darp::test
