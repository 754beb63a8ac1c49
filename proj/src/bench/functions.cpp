#include "nirmal/bench/functions.hpp"

#include <cmath>

#include "nirmal/error.hpp"
#include "nirmal/ndbuffer/random.hpp"

namespace nirmal::bench {

bool is_symmetric_positive_definite(std::span<const double> a, std::size_t n) {
    if (n == 0 || a.size() != n * n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double x = a[i * n + j], y = a[j * n + i];
            if (std::abs(x - y) > 1e-12 * std::max({1.0, std::abs(x), std::abs(y)})) return false;
        }
    }
    std::vector<double> l(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
        if (!(d > 0.0)) return false;
        l[j * n + j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
            l[i * n + j] = s / l[j * n + j];
        }
    }
    return true;
}

TestFunction quadratic_fn(std::vector<double> a, std::size_t n) {
    if (!is_symmetric_positive_definite(a, n)) throw ContractViolation("quadratic_fn: matrix is not symmetric positive definite");
    TestFunction fn;
    fn.name = "quadratic";
    fn.dim = n;
    fn.minimizer.assign(n, 0.0);
    fn.minimum = 0.0;
    fn.evaluate = [a = std::move(a), n](std::span<const double> x, std::span<double> grad) {
        double f = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += a[i * n + j] * x[j];
            grad[i] = row;
            f += x[i] * row;
        }
        return 0.5 * f;
    };
    fn.initial_point = [n](std::uint64_t seed) {
        Rng rng(seed, 0);
        std::vector<double> x(n);
        double norm = 0.0;
        for (auto& xi : x) {
            xi = rng.normal();
            norm += xi * xi;
        }
        norm = std::sqrt(norm);
        for (auto& xi : x) xi /= norm;
        return x;
    };
    return fn;
}

TestFunction identity_quadratic(std::size_t n) {
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 1.0;
    return quadratic_fn(std::move(a), n);
}

TestFunction rosenbrock_fn(std::size_t dim) {
    if (dim < 2) throw ContractViolation("rosenbrock_fn: dimension must be at least 2");
    TestFunction fn;
    fn.name = "rosenbrock";
    fn.dim = dim;
    fn.minimizer.assign(dim, 1.0);
    fn.minimum = 0.0;
    fn.evaluate = [dim](std::span<const double> x, std::span<double> grad) {
        double f = 0.0;
        for (std::size_t i = 0; i < dim; ++i) grad[i] = 0.0;
        for (std::size_t i = 0; i + 1 < dim; ++i) {
            const double r = x[i + 1] - x[i] * x[i];
            const double s = 1.0 - x[i];
            f += 100.0 * r * r + s * s;
            grad[i] += -400.0 * x[i] * r - 2.0 * s;
            grad[i + 1] += 200.0 * r;
        }
        return f;
    };
    fn.initial_point = [dim](std::uint64_t) {
        std::vector<double> x(dim);
        for (std::size_t i = 0; i < dim; ++i) x[i] = i % 2 == 0 ? -1.2 : 1.0;
        return x;
    };
    return fn;
}

}  // namespace nirmal::bench
