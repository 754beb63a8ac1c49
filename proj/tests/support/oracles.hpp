#pragma once

// 64-bit reference implementations used as test oracles. They are written
// directly from the update equations and share no code with the library.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

struct NirmalParams {
    double lr = 1e-3, mu = 0.9, beta = 0.999, eps = 1e-8, kappa = 0.01, gamma = 1.5, lambda = 0.5;
    double w[5] = {0.3, 0.25, 0.1, 0.2, 0.15};
    double alpha = 0.0;
};

struct NirmalScalar {
    double theta, m, v;
    double d_wazir, d_elephant, d_knight, d_camel, d_horse, d_total;
};

inline NirmalScalar nirmal(double theta, double g, double m, double v, double noise, const NirmalParams& p) {
    g = g + p.alpha * theta;
    NirmalScalar r{};
    r.m = p.mu * m + (1.0 - p.mu) * g;
    r.v = p.beta * v + (1.0 - p.beta) * g * g;
    r.d_wazir = -p.lr * g;
    r.d_elephant = -p.lr * r.m;
    r.d_knight = p.lr * p.kappa * noise;
    r.d_camel = -p.lr * p.gamma * r.m / (std::sqrt(r.v) + p.eps);
    r.d_horse = -p.lr * p.lambda * std::tanh(r.m);
    r.d_total = p.w[0] * r.d_wazir + p.w[1] * r.d_elephant + p.w[2] * r.d_knight + p.w[3] * r.d_camel +
                p.w[4] * r.d_horse;
    r.theta = theta + r.d_total;
    return r;
}

struct AdamScalar {
    double theta, m, v;
};

// t is the 1-based index of the step being taken.
inline AdamScalar adam(double theta, double g, double m, double v, std::uint64_t t, double lr = 1e-3,
                       double b1 = 0.9, double b2 = 0.999, double eps = 1e-8, double alpha = 0.0) {
    g = g + alpha * theta;
    AdamScalar r{};
    r.m = b1 * m + (1.0 - b1) * g;
    r.v = b2 * v + (1.0 - b2) * g * g;
    const double mh = r.m / (1.0 - std::pow(b1, static_cast<double>(t)));
    const double vh = r.v / (1.0 - std::pow(b2, static_cast<double>(t)));
    r.theta = theta - lr * mh / (std::sqrt(vh) + eps);
    return r;
}

struct SgdmScalar {
    double theta, v;
};

inline SgdmScalar sgdm(double theta, double g, double v, double lr = 0.01, double mu = 0.9, double alpha = 0.0) {
    g = g + alpha * theta;
    SgdmScalar r{};
    r.v = mu * v + lr * g;
    r.theta = theta - r.v;
    return r;
}

// Row-major naive triple loop.
inline std::vector<double> matmul(const std::vector<double>& a, const std::vector<double>& b, std::size_t m,
                                  std::size_t k, std::size_t n) {
    std::vector<double> c(m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t p = 0; p < k; ++p) s += a[i * k + p] * b[p * n + j];
            c[i * n + j] = s;
        }
    return c;
}

// Per-class precision/recall/F1 from raw label vectors, support-weighted.
inline double weighted_f1(const std::vector<std::uint32_t>& preds, const std::vector<std::uint32_t>& labels,
                          std::size_t k) {
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        double tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const bool p = preds[i] == c, l = labels[i] == c;
            if (p && l) tp += 1;
            if (p && !l) fp += 1;
            if (!p && l) fn += 1;
        }
        const double prec = tp + fp > 0 ? tp / (tp + fp) : 0.0;
        const double rec = tp + fn > 0 ? tp / (tp + fn) : 0.0;
        const double f1 = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
        total += (tp + fn) * f1;
    }
    return labels.empty() ? 0.0 : total / static_cast<double>(labels.size());
}

}  // namespace oracle
