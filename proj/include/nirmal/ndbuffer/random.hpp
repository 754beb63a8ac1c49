#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace nirmal {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The output is
// a pure function of (counter, key), so any block of any stream can be
// produced independently of every other.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key) noexcept;

// 52-bit uniform in (0, 1) from two 32-bit words; never returns 0 so it is
// safe to take its logarithm.
double uniform_open01(std::uint32_t hi, std::uint32_t lo) noexcept;

// Sequential stream over Philox blocks keyed by (seed, stream). Used for
// initialization, shuffling and synthetic data.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;
    double uniform() noexcept;                     // (0, 1)
    double uniform(double lo, double hi) noexcept;  // (lo, hi)
    double normal() noexcept;
    // Unbiased integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    void refill() noexcept;

    PhiloxKey key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    PhiloxCounter buffer_{};
    std::size_t used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Fills out with i.i.d. N(0,1) samples keyed by (seed, stream, step). The same
// key always yields the same samples; sample i depends only on the key and i.
void keyed_normals(std::span<float> out, std::uint64_t seed, std::uint32_t stream, std::uint64_t step);
void keyed_normals(std::span<double> out, std::uint64_t seed, std::uint32_t stream, std::uint64_t step);

}  // namespace nirmal
