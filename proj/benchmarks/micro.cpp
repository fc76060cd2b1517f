#include <benchmark/benchmark.h>

#include "darp/construction.hpp"
#include "darp/instgen.hpp"
#include "darp/neighborhood.hpp"
#include "darp/schedule.hpp"

namespace {

const darp::Instance& instance() {
  static const darp::Instance inst = darp::generate_instance(48, 4, 7);
  return inst;
}

const darp::Solution& start() {
  static const darp::Solution sol = darp::construct_greedy(instance(), 7);
  return sol;
}

void BM_EvaluateRoute(benchmark::State& state) {
  const auto level = static_cast<darp::EvaluationLevel>(state.range(0));
  darp::ScheduleEvaluator evaluator(instance());
  const auto& route = start().routes.front().vertex_sequence;
  for (auto _ : state) benchmark::DoNotOptimize(evaluator.summarize(route, level));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EvaluateRoute)->Arg(1)->Arg(2)->Arg(3);

void BM_Neighborhood(benchmark::State& state) {
  const auto mode = state.range(0) == 1 ? darp::InsertionMode::OneStep : darp::InsertionMode::TwoStep;
  darp::SolutionState s(instance(), start(), darp::EvaluationLevel::Level3);
  for (auto _ : state) {
    std::size_t count = 0;
    darp::for_each_candidate(s, mode, {}, [&](const darp::Candidate&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_Neighborhood)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
