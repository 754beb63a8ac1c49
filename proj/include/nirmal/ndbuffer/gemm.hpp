#pragma once

#include <cstddef>
#include <span>

// Raw row-major float32 matrix kernels shared by matmul and the layers.
//
// Every output element c[i][j] is accumulated over k in ascending order,
// starting from its initial value (zero, or the existing contents when
// accumulating). Blocking only changes which (i, j) pairs are processed
// together, never the order of additions into one element, so results are
// bit-identical for any tile sizes.
namespace nirmal::gemm {

// c[M x N] (+)= a[M x K] * b[K x N]
void nn(std::span<const float> a, std::span<const float> b, std::span<float> c,
        std::size_t m, std::size_t k, std::size_t n, bool accumulate = false);

// c[M x N] (+)= transpose(a[K x M]) * b[K x N]
void tn(std::span<const float> a, std::span<const float> b, std::span<float> c,
        std::size_t m, std::size_t k, std::size_t n, bool accumulate = false);

// out[cols x rows] = transpose(in[rows x cols])
void transpose(std::span<const float> in, std::span<float> out, std::size_t rows, std::size_t cols);

}  // namespace nirmal::gemm
