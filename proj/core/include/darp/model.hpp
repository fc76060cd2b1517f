#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace darp {

using VertexId = int;
using RequestId = int;
using VehicleId = int;

/// Thrown when a caller breaks an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Vertex {
  VertexId id = 0;
  double x = 0.0;
  double y = 0.0;
  double service_duration = 0.0;
  int load_change = 0;
  double window_earliest = 0.0;
  double window_latest = 0.0;

  double window_width() const { return window_latest - window_earliest; }
  bool operator==(const Vertex&) const = default;
};

/// Dense symmetric travel matrix. Travel time and travel cost coincide.
class TravelMatrix {
 public:
  TravelMatrix() = default;
  explicit TravelMatrix(std::size_t size) : size_(size), data_(size * size, 0.0) {}

  static TravelMatrix euclidean(const std::vector<Vertex>& vertices);

  double operator()(VertexId from, VertexId to) const {
    return data_[static_cast<std::size_t>(from) * size_ + static_cast<std::size_t>(to)];
  }
  double& at(VertexId from, VertexId to) {
    return data_[static_cast<std::size_t>(from) * size_ + static_cast<std::size_t>(to)];
  }
  std::size_t size() const { return size_; }
  bool operator==(const TravelMatrix&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<double> data_;
};

/// Immutable problem data. Vertex 0 is the depot, 1..n pickups, n+1..2n drop-offs.
struct Instance {
  std::string name;
  int n_requests = 0;
  int n_vehicles = 0;
  int vehicle_capacity = 0;
  double max_route_duration = 0.0;
  double max_ride_time = 0.0;
  double horizon = 0.0;
  std::vector<Vertex> vertices;
  TravelMatrix travel;

  const Vertex& vertex(VertexId id) const { return vertices[static_cast<std::size_t>(id)]; }
  VertexId pickup(RequestId request) const { return request; }
  VertexId dropoff(RequestId request) const { return request + n_requests; }
  bool is_pickup(VertexId id) const { return id >= 1 && id <= n_requests; }
  bool is_dropoff(VertexId id) const { return id > n_requests && id <= 2 * n_requests; }
  RequestId request_of(VertexId id) const { return id > n_requests ? id - n_requests : id; }
  int vertex_count() const { return 2 * n_requests + 1; }

  /// Checks the structural invariants; throws ContractError naming the first broken one.
  void check_invariants() const;

  bool operator==(const Instance& other) const;
};

struct Route {
  VehicleId vehicle_id = 0;
  std::vector<VertexId> vertex_sequence;  // depot implicit at both ends

  bool empty() const { return vertex_sequence.empty(); }
  std::size_t size() const { return vertex_sequence.size(); }
  bool operator==(const Route&) const = default;
};

struct Solution {
  std::vector<Route> routes;           // one per vehicle, routes[k].vehicle_id == k
  std::vector<VehicleId> assignment;   // indexed by request id; slot 0 unused, -1 = unassigned

  static Solution empty(const Instance& instance);

  /// Rebuilds `assignment` from the route contents.
  void sync_assignment(const Instance& instance);
  bool operator==(const Solution&) const = default;
};

enum class DefectKind { SameRoute, Precedence, Unassigned, Duplicate, UnknownVertex, AssignmentMismatch };

struct Defect {
  DefectKind kind;
  RequestId request;  // 0 when the defect is not tied to a request
  std::string detail;
};

std::string to_string(DefectKind kind);

/// Structural check of the basic routing rules: pairing on one route,
/// pickup before drop-off, every request assigned exactly once.
std::vector<Defect> validate_solution(const Instance& instance, const Solution& solution);

/// Single-pass check of one route: precedence, no repeats, ids in range,
/// and (when `require_complete_pairs`) both vertices of every request present.
bool route_is_well_formed(const Instance& instance, const Route& route, bool require_complete_pairs = true);

}  // namespace darp
