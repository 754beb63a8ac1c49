#include "nirmal/ndbuffer/random.hpp"

#include <cmath>
#include <numbers>

namespace nirmal {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

// Separates sequential Rng streams from the optimizer noise streams built on
// the same seed.
constexpr std::uint64_t kSequentialDomain = 0x5851F42D4C957F2Dull;

PhiloxKey split_key(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

template <class T>
void fill_normals(std::span<T> out, std::uint64_t seed, std::uint32_t stream, std::uint64_t step) {
    const PhiloxKey key = split_key(seed);
    const auto step_lo = static_cast<std::uint32_t>(step);
    const auto step_hi = static_cast<std::uint32_t>(step >> 32);
    for (std::size_t i = 0; i < out.size(); i += 2) {
        const auto block = static_cast<std::uint32_t>(i / 2);
        const PhiloxCounter r = philox4x32({block, stream, step_lo, step_hi}, key);
        const double u1 = uniform_open01(r[0], r[1]);
        const double u2 = uniform_open01(r[2], r[3]);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        out[i] = static_cast<T>(radius * std::cos(angle));
        if (i + 1 < out.size()) out[i + 1] = static_cast<T>(radius * std::sin(angle));
    }
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

double uniform_open01(std::uint32_t hi, std::uint32_t lo) noexcept {
    // 52 bits so that the largest value, 1 - 2^-53, stays below 1.
    const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) noexcept : key_(split_key(seed ^ kSequentialDomain)), stream_(stream) {}

void Rng::refill() noexcept {
    buffer_ = philox4x32({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                         key_);
    ++block_;
    used_ = 0;
}

std::uint32_t Rng::next_u32() noexcept {
    if (used_ == 4) refill();
    return buffer_[used_++];
}

std::uint64_t Rng::next_u64() noexcept {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
}

double Rng::uniform() noexcept {
    const std::uint32_t hi = next_u32();
    return uniform_open01(hi, next_u32());
}

double Rng::uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

void keyed_normals(std::span<float> out, std::uint64_t seed, std::uint32_t stream, std::uint64_t step) {
    fill_normals(out, seed, stream, step);
}

void keyed_normals(std::span<double> out, std::uint64_t seed, std::uint32_t stream, std::uint64_t step) {
    fill_normals(out, seed, stream, step);
}

}  // namespace nirmal
