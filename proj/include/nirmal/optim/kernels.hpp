#pragma once

#include <cmath>
#include <concepts>

#include "nirmal/optim/config.hpp"

// Per-element update rules, templated on the arithmetic type. The optimizers
// keep parameters and moments in float32 but evaluate each element's update
// with T = double and round once on store, so rounding does not accumulate
// in the moment recurrences.
//
// Decay complements such as (1 - beta) are formed in double before being
// narrowed to T, since 1 - 0.999f loses four significant digits.
namespace nirmal::optim::kernel {

template <std::floating_point T>
struct NirmalCoeffs {
    T mu, one_minus_mu;
    T beta, one_minus_beta;
    T eps;
    T weight_decay;
    T wazir, elephant, knight, camel, horse;  // component weights
    T lr, kappa_lr, gamma_lr, lambda_lr;

    explicit NirmalCoeffs(const NirmalConfig& c)
        : mu(static_cast<T>(c.mu)),
          one_minus_mu(static_cast<T>(1.0 - c.mu)),
          beta(static_cast<T>(c.beta)),
          one_minus_beta(static_cast<T>(1.0 - c.beta)),
          eps(static_cast<T>(c.eps)),
          weight_decay(static_cast<T>(c.weight_decay)),
          wazir(static_cast<T>(c.weights.wazir)),
          elephant(static_cast<T>(c.weights.elephant)),
          knight(static_cast<T>(c.weights.knight)),
          camel(static_cast<T>(c.weights.camel)),
          horse(static_cast<T>(c.weights.horse)),
          lr(static_cast<T>(c.lr)),
          kappa_lr(static_cast<T>(c.kappa * c.lr)),
          gamma_lr(static_cast<T>(c.gamma * c.lr)),
          lambda_lr(static_cast<T>(c.lambda * c.lr)) {}
};

// The five unweighted component deltas and their weighted sum.
template <std::floating_point T>
struct NirmalTerms {
    T wazir, elephant, knight, camel, horse, total;
};

// Advances (m, v) in place for one element and returns the deltas. The caller
// applies theta + total. `noise` is the element's standard-normal draw.
template <std::floating_point T>
NirmalTerms<T> nirmal_element(T theta, T grad, T& m, T& v, T noise, const NirmalCoeffs<T>& k) {
    const T g = grad + k.weight_decay * theta;
    m = k.mu * m + k.one_minus_mu * g;
    v = k.beta * v + k.one_minus_beta * (g * g);
    NirmalTerms<T> d;
    d.wazir = -(k.lr * g);
    d.elephant = -(k.lr * m);
    d.knight = k.kappa_lr * noise;
    d.camel = -(k.gamma_lr * (m / (std::sqrt(v) + k.eps)));
    d.horse = -(k.lambda_lr * std::tanh(m));
    d.total = k.wazir * d.wazir + k.elephant * d.elephant + k.knight * d.knight + k.camel * d.camel +
              k.horse * d.horse;
    return d;
}

template <std::floating_point T>
struct AdamCoeffs {
    T beta1, one_minus_beta1;
    T beta2, one_minus_beta2;
    T inv_bias1, inv_bias2;  // 1 / (1 - beta^t)
    T lr, eps, weight_decay;

    // `step` is the 1-based index of the step being taken.
    AdamCoeffs(const AdamConfig& c, unsigned long long step)
        : beta1(static_cast<T>(c.beta1)),
          one_minus_beta1(static_cast<T>(1.0 - c.beta1)),
          beta2(static_cast<T>(c.beta2)),
          one_minus_beta2(static_cast<T>(1.0 - c.beta2)),
          inv_bias1(static_cast<T>(1.0 / (1.0 - std::pow(c.beta1, static_cast<double>(step))))),
          inv_bias2(static_cast<T>(1.0 / (1.0 - std::pow(c.beta2, static_cast<double>(step))))),
          lr(static_cast<T>(c.lr)),
          eps(static_cast<T>(c.eps)),
          weight_decay(static_cast<T>(c.weight_decay)) {}
};

// Returns the delta added to theta.
template <std::floating_point T>
T adam_element(T theta, T grad, T& m, T& v, const AdamCoeffs<T>& k) {
    const T g = grad + k.weight_decay * theta;
    m = k.beta1 * m + k.one_minus_beta1 * g;
    v = k.beta2 * v + k.one_minus_beta2 * (g * g);
    const T m_hat = m * k.inv_bias1;
    const T v_hat = v * k.inv_bias2;
    return -(k.lr * (m_hat / (std::sqrt(v_hat) + k.eps)));
}

template <std::floating_point T>
struct SgdMomentumCoeffs {
    T lr, momentum, weight_decay;

    explicit SgdMomentumCoeffs(const SgdMomentumConfig& c)
        : lr(static_cast<T>(c.lr)), momentum(static_cast<T>(c.momentum)), weight_decay(static_cast<T>(c.weight_decay)) {}
};

// Advances the velocity in place; the caller applies theta - velocity.
template <std::floating_point T>
void sgdm_element(T theta, T grad, T& velocity, const SgdMomentumCoeffs<T>& k) {
    const T g = grad + k.weight_decay * theta;
    velocity = k.momentum * velocity + k.lr * g;
}

}  // namespace nirmal::optim::kernel
