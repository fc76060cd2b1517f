#include "darp/instgen.hpp"

#include <algorithm>
#include <cmath>

#include "darp/random.hpp"

namespace darp {

Instance generate_instance(int n_requests, int n_vehicles, std::uint64_t seed, const GeneratorParams& params) {
  if (n_requests < 0 || n_vehicles < 1) throw ContractError("generator needs n >= 0 and m >= 1");
  Rng rng(seed);
  auto coordinate = [&] { return std::round(rng.uniform(-params.half_side, params.half_side) * 1000.0) / 1000.0; };

  Instance inst;
  inst.name = "gen-n" + std::to_string(n_requests) + "-m" + std::to_string(n_vehicles) + "-s" + std::to_string(seed);
  inst.n_requests = n_requests;
  inst.n_vehicles = n_vehicles;
  inst.vehicle_capacity = params.capacity;
  inst.max_route_duration = params.max_route_duration;
  inst.max_ride_time = params.max_ride_time;
  inst.horizon = params.horizon;
  inst.vertices.resize(static_cast<std::size_t>(inst.vertex_count()));

  Vertex& depot = inst.vertices[0];
  depot = {0, 0.0, 0.0, 0.0, 0, 0.0, params.horizon};

  for (RequestId r = 1; r <= n_requests; ++r) {
    Vertex& pickup = inst.vertices[static_cast<std::size_t>(r)];
    Vertex& dropoff = inst.vertices[static_cast<std::size_t>(r + n_requests)];
    pickup = {r, coordinate(), coordinate(), params.service_duration, 1, 0.0, params.horizon};
    dropoff = {r + n_requests, coordinate(), coordinate(), params.service_duration, -1, 0.0, params.horizon};

    const bool narrow_pickup = rng.below(2) == 0;
    const double width = std::round(rng.uniform(params.narrow_width_min, params.narrow_width_max));
    const double start = std::round(rng.uniform(params.window_start_min, params.window_start_max));
    Vertex& narrow = narrow_pickup ? pickup : dropoff;
    narrow.window_earliest = start;
    narrow.window_latest = std::min(params.horizon, start + width);
  }

  inst.travel = TravelMatrix::euclidean(inst.vertices);
  inst.check_invariants();
  return inst;
}

}  // namespace darp
