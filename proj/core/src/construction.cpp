#include "darp/construction.hpp"

#include <limits>
#include <numeric>
#include <vector>

#include "darp/random.hpp"

namespace darp {

Solution construct_greedy(const Instance& instance, std::uint64_t seed, EvaluationLevel level,
                          EvaluationOptions options, std::uint64_t* work) {
  Solution solution = Solution::empty(instance);
  std::vector<RequestId> order(static_cast<std::size_t>(instance.n_requests));
  std::iota(order.begin(), order.end(), 1);
  Rng rng(seed);
  rng.shuffle(order);

  ScheduleEvaluator evaluator(instance, options);
  const Penalties unit{};
  std::vector<RouteSummary> summaries(solution.routes.size());
  std::vector<VertexId> seq;

  for (RequestId request : order) {
    const VertexId pickup = instance.pickup(request);
    const VertexId dropoff = instance.dropoff(request);
    double best_delta = std::numeric_limits<double>::infinity();
    std::size_t best_vehicle = 0;
    int best_p = 0;
    int best_d = 1;

    for (std::size_t k = 0; k < solution.routes.size(); ++k) {
      const auto& route = solution.routes[k].vertex_sequence;
      const int r = static_cast<int>(route.size());
      const double before = weighted(summaries[k].cost, summaries[k].violations, unit);
      for (int p = 0; p <= r; ++p) {
        for (int d = p + 1; d <= r + 1; ++d) {
          seq.clear();
          int b = 0;
          for (int pos = 0; pos < r + 2; ++pos) {
            if (pos == p)
              seq.push_back(pickup);
            else if (pos == d)
              seq.push_back(dropoff);
            else
              seq.push_back(route[static_cast<std::size_t>(b++)]);
          }
          const RouteSummary after = evaluator.summarize(seq, level);
          // other routes are untouched, so the change in f(s) decides
          const double delta = weighted(after.cost, after.violations, unit) - before;
          if (delta < best_delta) {
            best_delta = delta;
            best_vehicle = k;
            best_p = p;
            best_d = d;
          }
        }
      }
    }

    auto& route = solution.routes[best_vehicle].vertex_sequence;
    route.insert(route.begin() + best_p, pickup);
    route.insert(route.begin() + best_d, dropoff);
    summaries[best_vehicle] = evaluator.summarize(route, level);
    solution.assignment[static_cast<std::size_t>(request)] = static_cast<VehicleId>(best_vehicle);
  }
  if (work) *work = evaluator.work();
  return solution;
}

Solution construct_random(const Instance& instance, std::uint64_t seed) {
  Solution solution = Solution::empty(instance);
  Rng rng(seed);
  for (RequestId request = 1; request <= instance.n_requests; ++request) {
    const auto k = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(instance.n_vehicles)));
    solution.routes[k].vertex_sequence.push_back(instance.pickup(request));
    solution.routes[k].vertex_sequence.push_back(instance.dropoff(request));
    solution.assignment[static_cast<std::size_t>(request)] = static_cast<VehicleId>(k);
  }
  return solution;
}

}  // namespace darp
