#include "nirmal/ndbuffer/gemm.hpp"

#include <algorithm>

#include "nirmal/error.hpp"

namespace nirmal::gemm {

namespace {

constexpr std::size_t kTileK = 128;
constexpr std::size_t kTileN = 256;
constexpr std::size_t kMr = 4;
constexpr std::size_t kNr = 32;

// Element (row i, depth kk) of the left operand in either storage order.
struct RowMajorA {
    const float* a;
    std::size_t k;
    float operator()(std::size_t i, std::size_t kk) const { return a[i * k + kk]; }
};

struct TransposedA {
    const float* a;
    std::size_t m;
    float operator()(std::size_t i, std::size_t kk) const { return a[kk * m + i]; }
};

template <class A>
void kernel(const A& lhs, const float* b, float* c, std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t k0 = 0; k0 < k; k0 += kTileK) {
        const std::size_t k1 = std::min(k, k0 + kTileK);
        for (std::size_t j0 = 0; j0 < n; j0 += kTileN) {
            const std::size_t j1 = std::min(n, j0 + kTileN);
            std::size_t i = 0;
            for (; i + kMr <= m; i += kMr) {
                std::size_t j = j0;
                for (; j + kNr <= j1; j += kNr) {
                    float acc[kMr][kNr];
                    for (std::size_t r = 0; r < kMr; ++r)
                        for (std::size_t q = 0; q < kNr; ++q) acc[r][q] = c[(i + r) * n + j + q];
                    for (std::size_t kk = k0; kk < k1; ++kk) {
                        const float* brow = b + kk * n + j;
                        for (std::size_t r = 0; r < kMr; ++r) {
                            const float av = lhs(i + r, kk);
                            for (std::size_t q = 0; q < kNr; ++q) acc[r][q] += av * brow[q];
                        }
                    }
                    for (std::size_t r = 0; r < kMr; ++r)
                        for (std::size_t q = 0; q < kNr; ++q) c[(i + r) * n + j + q] = acc[r][q];
                }
                for (; j < j1; ++j) {
                    for (std::size_t r = 0; r < kMr; ++r) {
                        float acc = c[(i + r) * n + j];
                        for (std::size_t kk = k0; kk < k1; ++kk) acc += lhs(i + r, kk) * b[kk * n + j];
                        c[(i + r) * n + j] = acc;
                    }
                }
            }
            for (; i < m; ++i) {
                float* crow = c + i * n;
                for (std::size_t kk = k0; kk < k1; ++kk) {
                    const float av = lhs(i, kk);
                    const float* brow = b + kk * n;
                    for (std::size_t j = j0; j < j1; ++j) crow[j] += av * brow[j];
                }
            }
        }
    }
}

void check_sizes(std::size_t a, std::size_t b, std::size_t c, std::size_t m, std::size_t k, std::size_t n) {
    if (a < m * k || b < k * n || c < m * n) throw ContractViolation("gemm: operand spans too short for dimensions");
}

}  // namespace

void nn(std::span<const float> a, std::span<const float> b, std::span<float> c, std::size_t m, std::size_t k,
        std::size_t n, bool accumulate) {
    check_sizes(a.size(), b.size(), c.size(), m, k, n);
    if (!accumulate) std::fill_n(c.begin(), m * n, 0.0f);
    kernel(RowMajorA{a.data(), k}, b.data(), c.data(), m, k, n);
}

void tn(std::span<const float> a, std::span<const float> b, std::span<float> c, std::size_t m, std::size_t k,
        std::size_t n, bool accumulate) {
    check_sizes(a.size(), b.size(), c.size(), m, k, n);
    if (!accumulate) std::fill_n(c.begin(), m * n, 0.0f);
    kernel(TransposedA{a.data(), m}, b.data(), c.data(), m, k, n);
}

void transpose(std::span<const float> in, std::span<float> out, std::size_t rows, std::size_t cols) {
    if (in.size() < rows * cols || out.size() < rows * cols) throw ContractViolation("transpose: spans too short");
    constexpr std::size_t kBlock = 32;
    for (std::size_t r0 = 0; r0 < rows; r0 += kBlock) {
        const std::size_t r1 = std::min(rows, r0 + kBlock);
        for (std::size_t c0 = 0; c0 < cols; c0 += kBlock) {
            const std::size_t c1 = std::min(cols, c0 + kBlock);
            for (std::size_t r = r0; r < r1; ++r)
                for (std::size_t col = c0; col < c1; ++col) out[col * rows + r] = in[r * cols + col];
        }
    }
}

}  // namespace nirmal::gemm
