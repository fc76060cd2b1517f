#pragma once

#include <optional>
#include <stdexcept>

#include "darp/model.hpp"
#include "darp/schedule.hpp"

namespace darp::oracle {

/// Thrown when an instance or route is too large for exhaustive treatment.
class Refusal : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr int kMaxExactRequests = 5;
inline constexpr int kMaxBruteRouteVertices = 8;

struct ExactResult {
  double cost = 0.0;
  Solution solution;
};

/// Exhaustive optimum over all request-to-vehicle assignments and all
/// precedence-respecting orders, judged feasible by a Level3 evaluation.
/// Returns nullopt when no feasible solution exists.
std::optional<ExactResult> exact_solve(const Instance& instance, EvaluationOptions options = {});

struct ViolationWeights {
  double duration = 1.0;  // beta
  double lateness = 1.0;  // gamma
  double ride = 1.0;      // tau
};

/// Smallest achievable beta*duration_excess + gamma*lateness + tau*ride_excess
/// over every schedule of the route: any depot departure, any extra waiting
/// before any vertex. Solved exactly as a linear program; shares nothing with
/// the staged schedule procedure.
double brute_schedule(const Instance& instance, const Route& route, const ViolationWeights& weights = {});

}  // namespace darp::oracle
