#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nirmal::bench {

// Analytic objective with its gradient, evaluated in double.
struct TestFunction {
    std::string name;
    std::size_t dim = 0;
    // Returns f(theta) and writes the gradient into `grad` (length dim).
    std::function<double(std::span<const double> theta, std::span<double> grad)> evaluate;
    // Starting point for a seeded run.
    std::function<std::vector<double>(std::uint64_t seed)> initial_point;
    std::vector<double> minimizer;
    double minimum = 0.0;
};

// f = 1/2 theta^T A theta for a symmetric positive definite A (row-major,
// n x n). Starts on the unit sphere at a seeded uniformly random direction.
TestFunction quadratic_fn(std::vector<double> a, std::size_t n);
TestFunction identity_quadratic(std::size_t n);

// sum_i 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2, minimum 0 at all ones.
// Starts at (-1.2, 1, -1.2, 1, ...).
TestFunction rosenbrock_fn(std::size_t dim);

// Cholesky-based check used by quadratic_fn.
bool is_symmetric_positive_definite(std::span<const double> a, std::size_t n);

}  // namespace nirmal::bench
