#include "darp/model.hpp"

#include <cmath>

namespace darp {

TravelMatrix TravelMatrix::euclidean(const std::vector<Vertex>& vertices) {
  TravelMatrix matrix(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      const double d = std::hypot(vertices[i].x - vertices[j].x, vertices[i].y - vertices[j].y);
      matrix.at(static_cast<VertexId>(i), static_cast<VertexId>(j)) = d;
      matrix.at(static_cast<VertexId>(j), static_cast<VertexId>(i)) = d;
    }
  }
  return matrix;
}

void Instance::check_invariants() const {
  auto fail = [](const std::string& what) { throw ContractError("invalid instance: " + what); };
  if (n_requests < 0) fail("negative request count");
  if (n_vehicles < 1) fail("fleet must have at least one vehicle");
  if (vehicle_capacity <= 0) fail("capacity must be positive");
  if (!(max_route_duration > 0.0)) fail("route duration bound must be positive");
  if (!(max_ride_time > 0.0)) fail("ride time bound must be positive");
  if (static_cast<int>(vertices.size()) != vertex_count()) fail("vertex count is not 2n+1");
  if (travel.size() != vertices.size()) fail("travel matrix size does not match vertex count");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vertex& v = vertices[i];
    if (v.id != static_cast<VertexId>(i)) fail("vertex " + std::to_string(i) + " has id " + std::to_string(v.id));
    if (v.service_duration < 0.0) fail("negative service duration at vertex " + std::to_string(i));
    if (v.window_earliest < 0.0 || v.window_earliest > v.window_latest || v.window_latest > horizon)
      fail("window out of order at vertex " + std::to_string(i));
    if (travel(v.id, v.id) != 0.0) fail("nonzero travel diagonal");
    for (std::size_t j = 0; j < i; ++j) {
      const auto a = static_cast<VertexId>(i);
      const auto b = static_cast<VertexId>(j);
      if (travel(a, b) != travel(b, a) || travel(a, b) < 0.0) fail("travel matrix not symmetric/nonnegative");
    }
  }
  for (RequestId r = 1; r <= n_requests; ++r) {
    if (vertex(dropoff(r)).load_change != -vertex(pickup(r)).load_change)
      fail("drop-off load does not negate pickup load for request " + std::to_string(r));
  }
}

bool Instance::operator==(const Instance& other) const {
  return n_requests == other.n_requests && n_vehicles == other.n_vehicles &&
         vehicle_capacity == other.vehicle_capacity && max_route_duration == other.max_route_duration &&
         max_ride_time == other.max_ride_time && horizon == other.horizon && vertices == other.vertices &&
         travel == other.travel;
}

Solution Solution::empty(const Instance& instance) {
  Solution s;
  s.routes.resize(static_cast<std::size_t>(instance.n_vehicles));
  for (int k = 0; k < instance.n_vehicles; ++k) s.routes[static_cast<std::size_t>(k)].vehicle_id = k;
  s.assignment.assign(static_cast<std::size_t>(instance.n_requests) + 1, -1);
  return s;
}

void Solution::sync_assignment(const Instance& instance) {
  assignment.assign(static_cast<std::size_t>(instance.n_requests) + 1, -1);
  for (const Route& route : routes) {
    for (VertexId v : route.vertex_sequence) {
      if (instance.is_pickup(v)) assignment[static_cast<std::size_t>(v)] = route.vehicle_id;
    }
  }
}

std::string to_string(DefectKind kind) {
  switch (kind) {
    case DefectKind::SameRoute: return "same-route";
    case DefectKind::Precedence: return "precedence";
    case DefectKind::Unassigned: return "unassigned";
    case DefectKind::Duplicate: return "duplicate";
    case DefectKind::UnknownVertex: return "unknown-vertex";
    case DefectKind::AssignmentMismatch: return "assignment-mismatch";
  }
  return "unknown";
}

bool route_is_well_formed(const Instance& instance, const Route& route, bool require_complete_pairs) {
  std::vector<char> seen(static_cast<std::size_t>(instance.vertex_count()), 0);
  for (VertexId v : route.vertex_sequence) {
    if (v < 1 || v >= instance.vertex_count()) return false;
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
    if (instance.is_dropoff(v)) {
      const VertexId p = instance.pickup(instance.request_of(v));
      if (!seen[static_cast<std::size_t>(p)] && require_complete_pairs) return false;
    }
  }
  if (require_complete_pairs) {
    for (VertexId v : route.vertex_sequence) {
      if (instance.is_pickup(v) && !seen[static_cast<std::size_t>(instance.dropoff(v))]) return false;
    }
  } else {
    // a lone drop-off is fine, but a drop-off must never precede its own pickup
    std::vector<char> passed(seen.size(), 0);
    for (VertexId v : route.vertex_sequence) {
      if (instance.is_pickup(v) && passed[static_cast<std::size_t>(instance.dropoff(v))]) return false;
      passed[static_cast<std::size_t>(v)] = 1;
    }
  }
  return true;
}

std::vector<Defect> validate_solution(const Instance& instance, const Solution& solution) {
  std::vector<Defect> defects;
  const auto n = static_cast<std::size_t>(instance.n_requests);
  std::vector<int> pickup_route(n + 1, -1), dropoff_route(n + 1, -1);
  std::vector<std::size_t> pickup_pos(n + 1, 0), dropoff_pos(n + 1, 0);

  for (std::size_t k = 0; k < solution.routes.size(); ++k) {
    const auto& seq = solution.routes[k].vertex_sequence;
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
      const VertexId v = seq[pos];
      if (v < 1 || v >= instance.vertex_count()) {
        defects.push_back({DefectKind::UnknownVertex, 0, "vertex " + std::to_string(v) + " on route " + std::to_string(k)});
        continue;
      }
      const auto r = static_cast<std::size_t>(instance.request_of(v));
      auto& slot = instance.is_pickup(v) ? pickup_route[r] : dropoff_route[r];
      if (slot != -1) {
        defects.push_back({DefectKind::Duplicate, static_cast<RequestId>(r), "vertex " + std::to_string(v) + " appears twice"});
        continue;
      }
      slot = static_cast<int>(k);
      (instance.is_pickup(v) ? pickup_pos[r] : dropoff_pos[r]) = pos;
    }
  }

  for (std::size_t r = 1; r <= n; ++r) {
    const auto request = static_cast<RequestId>(r);
    if (pickup_route[r] == -1 || dropoff_route[r] == -1) {
      defects.push_back({DefectKind::Unassigned, request, "request not fully routed"});
      continue;
    }
    if (pickup_route[r] != dropoff_route[r]) {
      defects.push_back({DefectKind::SameRoute, request,
                         "pickup on vehicle " + std::to_string(pickup_route[r]) + ", drop-off on vehicle " +
                             std::to_string(dropoff_route[r])});
      continue;
    }
    if (dropoff_pos[r] < pickup_pos[r]) {
      defects.push_back({DefectKind::Precedence, request, "drop-off visited before pickup"});
    }
    if (r < solution.assignment.size() && solution.assignment[r] != pickup_route[r]) {
      defects.push_back({DefectKind::AssignmentMismatch, request,
                         "assignment says vehicle " + std::to_string(solution.assignment[r])});
    }
  }
  return defects;
}

}  // namespace darp
