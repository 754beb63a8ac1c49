#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nirmal/bench/functions.hpp"
#include "nirmal/optim/config.hpp"

namespace nirmal::bench {

struct NamedOptimizer {
    std::string label;
    optim::OptimizerConfig config;
};

struct TrajectoryPoint {
    std::size_t step;  // 0 is the starting point
    double value;
    double grad_norm;
};

struct Trajectory {
    std::string optimizer;
    std::uint64_t seed = 0;
    std::vector<TrajectoryPoint> points;
    std::optional<std::size_t> diverged_at;

    double final_value() const { return points.back().value; }
};

// Parameters are float32 buffers stepped by the library optimizers; f and
// its gradient are evaluated in double at the current float point. NIRMAL
// noise uses `seed`. A non-finite value or gradient ends the trajectory and
// sets diverged_at.
Trajectory run_trajectory(const TestFunction& fn, const NamedOptimizer& opt, std::size_t steps, std::uint64_t seed);

struct OptimizerSummary {
    std::string optimizer;
    std::vector<std::uint64_t> seeds;
    std::vector<double> final_values;
    double median_final = 0.0;
    std::size_t diverged = 0;
};

struct FunctionBenchResult {
    std::string function;
    std::size_t steps = 0;
    std::uint64_t seed = 0;
    std::vector<Trajectory> trajectories;
    std::vector<OptimizerSummary> summaries;
};

inline constexpr std::size_t kStochasticReplicates = 3;

// Every optimizer starts from fn.initial_point(seed). Stochastic optimizers
// run seeds seed, seed+1, seed+2 and report the median final value;
// deterministic ones run once.
FunctionBenchResult run_function_bench(const TestFunction& fn, const std::vector<NamedOptimizer>& optimizers,
                                       std::size_t steps, std::uint64_t seed);

double median(std::vector<double> values);

// trajectories.csv (optimizer,seed,step,f,grad_norm) and summary.json.
void write_function_bench(const FunctionBenchResult& result, const std::filesystem::path& dir);

}  // namespace nirmal::bench
