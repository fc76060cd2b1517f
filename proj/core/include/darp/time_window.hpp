#pragma once

#include <stdexcept>
#include <string>

#include "darp/model.hpp"

namespace darp {

enum class CriticalSide { Pickup, Dropoff };

/// Which vertex of a request carries the narrower time window.
struct CriticalityTag {
  RequestId request = 0;
  CriticalSide critical = CriticalSide::Pickup;

  VertexId critical_vertex(const Instance& inst) const {
    return critical == CriticalSide::Pickup ? inst.pickup(request) : inst.dropoff(request);
  }
  VertexId free_vertex(const Instance& inst) const {
    return critical == CriticalSide::Pickup ? inst.dropoff(request) : inst.pickup(request);
  }
};

class InfeasibleRequestError : public std::runtime_error {
 public:
  InfeasibleRequestError(RequestId request, const std::string& message)
      : std::runtime_error(message), request_(request) {}
  RequestId request() const { return request_; }

 private:
  RequestId request_;
};

/// Narrower window wins; equal widths make the pickup critical.
CriticalityTag classify_critical(const Instance& instance, RequestId request);

/// Tightens the window of each request's non-critical vertex from its twin's
/// window, the pickup service time and the ride-time bound. Returns a copy;
/// critical windows and everything else are left untouched.
Instance adjust_windows(const Instance& instance);

}  // namespace darp
