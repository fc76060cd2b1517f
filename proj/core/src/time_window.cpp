#include "darp/time_window.hpp"

#include <algorithm>

namespace darp {

CriticalityTag classify_critical(const Instance& instance, RequestId request) {
  if (request < 1 || request > instance.n_requests)
    throw ContractError("request " + std::to_string(request) + " out of range");
  const Vertex& pickup = instance.vertex(instance.pickup(request));
  const Vertex& dropoff = instance.vertex(instance.dropoff(request));
  return {request, dropoff.window_width() < pickup.window_width() ? CriticalSide::Dropoff : CriticalSide::Pickup};
}

Instance adjust_windows(const Instance& instance) {
  Instance out = instance;
  const double ride_bound = instance.max_ride_time;
  for (RequestId r = 1; r <= instance.n_requests; ++r) {
    const CriticalityTag tag = classify_critical(instance, r);
    const Vertex& pickup = instance.vertex(instance.pickup(r));
    const Vertex& dropoff = instance.vertex(instance.dropoff(r));
    const double service = pickup.service_duration;
    Vertex& target = out.vertices[static_cast<std::size_t>(tag.free_vertex(instance))];
    if (tag.critical == CriticalSide::Dropoff) {
      target.window_earliest = std::max(pickup.window_earliest, dropoff.window_earliest - service - ride_bound);
      target.window_latest = std::min(pickup.window_latest, dropoff.window_latest - service);
    } else {
      target.window_earliest = std::max(dropoff.window_earliest, pickup.window_earliest + service);
      target.window_latest = std::min(dropoff.window_latest, pickup.window_latest + service + ride_bound);
    }
    if (target.window_earliest > target.window_latest)
      throw InfeasibleRequestError(r, "request " + std::to_string(r) + " has an empty window after adjustment [" +
                                          std::to_string(target.window_earliest) + ", " +
                                          std::to_string(target.window_latest) + "]");
  }
  return out;
}

}  // namespace darp
