#pragma once

#include <cstdint>

#include "darp/model.hpp"
#include "darp/schedule.hpp"

namespace darp {

/// Greedy sequential insertion. Requests are taken in a seed-shuffled order
/// and each goes to the (vehicle, pickup slot, drop-off slot) with the least
/// f(s) under unit penalties, scanning every slot pair of every route. Ties
/// keep the first triple found in (vehicle, pickup, drop-off) ascending order.
/// `work`, when given, receives the evaluator's work counter.
Solution construct_greedy(const Instance& instance, std::uint64_t seed,
                          EvaluationLevel level = EvaluationLevel::Level3, EvaluationOptions options = {},
                          std::uint64_t* work = nullptr);

/// Baseline start: every request goes to a uniformly drawn vehicle, pickup and
/// drop-off appended at the end of that route.
Solution construct_random(const Instance& instance, std::uint64_t seed);

}  // namespace darp
