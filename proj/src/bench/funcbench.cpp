#include "nirmal/bench/funcbench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "nirmal/bench/outputs.hpp"
#include "nirmal/error.hpp"
#include "nirmal/optim/optimizer.hpp"

namespace nirmal::bench {

namespace {

optim::OptimizerConfig with_seed(optim::OptimizerConfig cfg, std::uint64_t seed) {
    if (auto* n = std::get_if<optim::NirmalConfig>(&cfg)) n->seed = seed;
    return cfg;
}

bool all_finite(std::span<const double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

namespace {

Trajectory trajectory(const TestFunction& fn, const NamedOptimizer& opt, std::size_t steps, std::uint64_t start_seed,
                      std::uint64_t noise_seed) {
    if (steps == 0) throw ContractViolation("run_trajectory: steps must be at least 1");
    const auto cfg = with_seed(opt.config, noise_seed);
    optim::validate(cfg);
    const auto start = fn.initial_point(start_seed);

    Buffer theta({fn.dim});
    for (std::size_t i = 0; i < fn.dim; ++i) theta[i] = static_cast<float>(start[i]);
    Buffer grad({fn.dim});
    auto state = optim::OptState::for_config(cfg, theta.shape());
    std::vector<double> x(fn.dim), g(fn.dim);

    Trajectory traj{opt.label, noise_seed, {}, std::nullopt};
    traj.points.reserve(steps + 1);
    for (std::size_t s = 0;; ++s) {
        for (std::size_t i = 0; i < fn.dim; ++i) x[i] = theta[i];
        const double f = fn.evaluate(x, g);
        double norm = 0.0;
        for (double gi : g) norm += gi * gi;
        norm = std::sqrt(norm);
        if (!std::isfinite(f) || !all_finite(g) || !all_finite(x)) {
            traj.diverged_at = s;
            break;
        }
        traj.points.push_back({s, f, norm});
        if (s == steps) break;
        for (std::size_t i = 0; i < fn.dim; ++i) grad[i] = static_cast<float>(g[i]);
        try {
            optim::update(theta.data(), grad.data(), state, cfg);
        } catch (const NonFiniteInput&) {
            traj.diverged_at = s + 1;
            break;
        }
    }
    if (traj.points.empty()) traj.points.push_back({0, std::nan(""), std::nan("")});
    return traj;
}

}  // namespace

Trajectory run_trajectory(const TestFunction& fn, const NamedOptimizer& opt, std::size_t steps, std::uint64_t seed) {
    return trajectory(fn, opt, steps, seed, seed);
}

double median(std::vector<double> values) {
    if (values.empty()) throw ContractViolation("median of no values");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

FunctionBenchResult run_function_bench(const TestFunction& fn, const std::vector<NamedOptimizer>& optimizers,
                                       std::size_t steps, std::uint64_t seed) {
    if (steps == 0) throw ContractViolation("run_function_bench: steps must be at least 1");
    FunctionBenchResult result{fn.name, steps, seed, {}, {}};
    for (const auto& opt : optimizers) {
        const std::size_t replicates = optim::is_stochastic(opt.config) ? kStochasticReplicates : 1;
        OptimizerSummary summary{opt.label, {}, {}, 0.0, 0};
        for (std::size_t r = 0; r < replicates; ++r) {
            // Replicates share the start point; only the noise seed varies.
            Trajectory t = trajectory(fn, opt, steps, seed, seed + r);
            summary.seeds.push_back(t.seed);
            if (t.diverged_at) {
                ++summary.diverged;
                summary.final_values.push_back(std::numeric_limits<double>::infinity());
            } else {
                summary.final_values.push_back(t.final_value());
            }
            result.trajectories.push_back(std::move(t));
        }
        summary.median_final = median(summary.final_values);
        result.summaries.push_back(std::move(summary));
    }
    return result;
}

void write_function_bench(const FunctionBenchResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::string csv = "optimizer,seed,step,f,grad_norm\n";
    for (const auto& t : result.trajectories) {
        for (const auto& p : t.points) {
            char line[160];
            std::snprintf(line, sizeof line, "%s,%llu,%zu,%.17g,%.17g\n", t.optimizer.c_str(),
                          static_cast<unsigned long long>(t.seed), p.step, p.value, p.grad_norm);
            csv += line;
        }
    }
    write_text(dir / "trajectories.csv", csv);

    nlohmann::ordered_json j;
    j["function"] = result.function;
    j["steps"] = result.steps;
    j["seed"] = result.seed;
    auto& runs = j["optimizers"] = nlohmann::ordered_json::array();
    for (const auto& s : result.summaries) {
        nlohmann::ordered_json row;
        row["optimizer"] = s.optimizer;
        row["seeds"] = s.seeds;
        nlohmann::ordered_json finals = nlohmann::ordered_json::array();
        for (double v : s.final_values) finals.push_back(std::isfinite(v) ? nlohmann::ordered_json(v) : nullptr);
        row["final_values"] = finals;
        row["median_final"] = std::isfinite(s.median_final) ? nlohmann::ordered_json(s.median_final) : nullptr;
        row["diverged"] = s.diverged;
        runs.push_back(row);
    }
    for (const auto& t : result.trajectories) {
        if (t.diverged_at) j["diverged"].push_back({{"optimizer", t.optimizer}, {"seed", t.seed}, {"step", *t.diverged_at}});
    }
    write_text(dir / "summary.json", j.dump(2) + "\n");
}

}  // namespace nirmal::bench
