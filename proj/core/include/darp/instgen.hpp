#pragma once

#include <cstdint>

#include "darp/model.hpp"

namespace darp {

/// Knobs for random instances. Defaults mirror the published benchmark bounds.
struct GeneratorParams {
  double half_side = 10.0;            // coordinates uniform in [-half_side, half_side]^2
  double narrow_width_min = 15.0;     // width of the critical window
  double narrow_width_max = 15.0;
  double window_start_min = 60.0;     // earliest start of a critical window
  double window_start_max = 360.0;
  double service_duration = 3.0;
  int capacity = 6;
  double max_ride_time = 90.0;
  double max_route_duration = 480.0;
  double horizon = 1440.0;
};

/// Random instance: each request has exactly one narrow window (pickup or
/// drop-off at random) and [0, horizon] on its twin; loads are +/-1.
/// Coordinates are rounded to 3 decimals and windows to whole minutes so the
/// instance survives a text round trip unchanged.
Instance generate_instance(int n_requests, int n_vehicles, std::uint64_t seed, const GeneratorParams& params = {});

}  // namespace darp
