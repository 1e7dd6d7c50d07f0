#include "tropkit/cli/workspace.hpp"
#include "tropkit/harmonic.hpp"

#include <benchmark/benchmark.h>

using namespace tropkit;

namespace {

LinearSystem witness_system(Execution policy)
{
    const auto w = cli::workspace_from_json(cli::read_json_file(std::string(TROPKIT_FIXTURES) + "/banana.json"));
    std::vector<Divisor> gens;
    for (const auto& name : w.systems.at("witness")) {
        gens.push_back(w.divisors.at(name));
    }
    return LinearSystem::build(w.graph, gens, policy);
}

Execution policy_of(const benchmark::State& state) { return state.range(0) == 0 ? Execution::serial : Execution::parallel; }

void BM_BuildSystem(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(witness_system(policy_of(state)).size());
    }
}

void BM_TreeCheck(benchmark::State& state)
{
    const LinearSystem t = witness_system(Execution::serial);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tt_is_tree(t, policy_of(state)).tree);
    }
}

void BM_ReducedMap(benchmark::State& state)
{
    const LinearSystem t = witness_system(Execution::serial);
    const auto samples = sample_points(t.graph(), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tt_reduced_map(t, samples, policy_of(state)).size());
    }
}

void BM_Witness(benchmark::State& state)
{
    const LinearSystem t = witness_system(Execution::serial);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tt_verify_witness(t, Rational(4), policy_of(state)).holds);
    }
}

} // namespace

// Argument 0 is the serial reference, 1 the OpenMP path.
BENCHMARK(BM_BuildSystem)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TreeCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReducedMap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Witness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
