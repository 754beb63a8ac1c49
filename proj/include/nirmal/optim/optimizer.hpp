#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nirmal/ndbuffer/buffer.hpp"
#include "nirmal/optim/config.hpp"

namespace nirmal::optim {

// Per-parameter-buffer optimizer slot. For SGD+M `m` holds the velocity and
// `v` is absent.
struct OptState {
    Buffer m;
    std::optional<Buffer> v;
    std::uint64_t t = 0;
    std::uint32_t stream_id = 0;

    static OptState zeros(const Shape& shape, bool second_moment, std::uint32_t stream_id = 0);
    static OptState for_config(const OptimizerConfig& cfg, const Shape& shape, std::uint32_t stream_id = 0);
};

struct StepResult {
    Buffer theta;
    OptState state;
};

StepResult nirmal_step(const Buffer& theta, const Buffer& grad, const OptState& state, const NirmalConfig& cfg);
StepResult adam_step(const Buffer& theta, const Buffer& grad, const OptState& state, const AdamConfig& cfg);
StepResult sgdm_step(const Buffer& theta, const Buffer& grad, const OptState& state, const SgdMomentumConfig& cfg);
StepResult step(const Buffer& theta, const Buffer& grad, const OptState& state, const OptimizerConfig& cfg);

// In-place forms used by the training loop; same semantics as the pure steps.
void nirmal_update(std::span<float> theta, std::span<const float> grad, OptState& state, const NirmalConfig& cfg);
void adam_update(std::span<float> theta, std::span<const float> grad, OptState& state, const AdamConfig& cfg);
void sgdm_update(std::span<float> theta, std::span<const float> grad, OptState& state, const SgdMomentumConfig& cfg);
void update(std::span<float> theta, std::span<const float> grad, OptState& state, const OptimizerConfig& cfg);

// The perturbation draw NIRMAL uses for the next step from `state`: n samples
// keyed by (seed, state.stream_id, state.t + 1).
Buffer gaussian_noise(const OptState& state, std::size_t n, std::uint64_t seed);

// Component deltas of one NIRMAL step, before and after weighting.
struct NirmalDeltas {
    Buffer wazir, elephant, knight, camel, horse, total;
};
NirmalDeltas nirmal_deltas(const Buffer& theta, const Buffer& grad, const OptState& state, const NirmalConfig& cfg);

// A parameter tensor and its gradient, as stepped by Optimizer.
struct ParamRef {
    std::span<float> value;
    std::span<const float> grad;
    Shape shape;
};

// Owns one OptState per parameter buffer; buffer i uses noise stream i.
class Optimizer {
public:
    explicit Optimizer(OptimizerConfig cfg);

    const OptimizerConfig& config() const noexcept { return cfg_; }
    const std::vector<OptState>& states() const noexcept { return states_; }
    std::uint64_t steps_taken() const noexcept { return steps_; }

    void step(std::span<const ParamRef> params);

private:
    OptimizerConfig cfg_;
    std::vector<OptState> states_;
    std::uint64_t steps_ = 0;
};

}  // namespace nirmal::optim
