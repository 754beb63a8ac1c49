#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nirmal/error.hpp"
#include "nirmal/ndbuffer/buffer.hpp"
#include "nirmal/ndbuffer/gemm.hpp"
#include "nirmal/ndbuffer/random.hpp"
#include "oracles.hpp"

using namespace nirmal;

TEST(Buffer, ShapeAndSize) {
    Buffer b({2, 3, 4}, 1.5f);
    EXPECT_EQ(b.size(), 24u);
    EXPECT_EQ(b.rank(), 3u);
    EXPECT_EQ(b.extent(2), 4u);
    EXPECT_FLOAT_EQ(b[23], 1.5f);
    EXPECT_THROW(Buffer({2, 0}), ContractViolation);
    EXPECT_THROW(Buffer({2, 2}, std::vector<float>(3)), ContractViolation);
    EXPECT_THROW(b.extent(3), ContractViolation);
}

TEST(Buffer, ReshapeKeepsData) {
    std::mt19937 gen(1);
    std::normal_distribution<float> nd;
    std::vector<float> vals(60);
    for (auto& v : vals) v = nd(gen);
    Buffer b({3, 4, 5}, vals);
    const auto r = b.reshape({12, 5});
    EXPECT_EQ(r.shape(), (Shape{12, 5}));
    EXPECT_EQ(r.flatten().values(), vals);
    EXPECT_EQ(b.shape(), (Shape{3, 4, 5}));
    EXPECT_THROW(b.reshape({7, 9}), ContractViolation);
}

TEST(Buffer, ElementwiseExamples) {
    EXPECT_EQ(add(Buffer::from({1, 2}), Buffer::from({3, 4})).values(), (std::vector<float>{4, 6}));
    EXPECT_FLOAT_EQ(div(Buffer::from({1.5f}), Buffer::from({0.5f}))[0], 3.0f);
    const auto x = Buffer::from({0.25f, -3.0f, 7.5f});
    EXPECT_EQ(mul(x, Buffer::ones_like(x)), x);
    EXPECT_EQ(sub(x, x), Buffer::zeros_like(x));
    EXPECT_THROW(add(Buffer({2}), Buffer({3})), ContractViolation);
    EXPECT_THROW(div(Buffer::from({1}), Buffer::from({0})), DomainError);
}

TEST(Buffer, AddIsCommutative) {
    std::mt19937 gen(7);
    std::normal_distribution<float> nd(0.0f, 100.0f);
    Buffer a({257}), b({257});
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = nd(gen);
        b[i] = nd(gen);
    }
    EXPECT_EQ(add(a, b), add(b, a));
}

TEST(Buffer, MapExamples) {
    EXPECT_EQ(map(Buffer::from({0}), map_fn::Tanh{})[0], 0.0f);
    EXPECT_NEAR(map(Buffer::from({0.001f}), map_fn::Sqrt{})[0], 0.0316228, 1e-6);
    EXPECT_EQ(map(Buffer::from({2, 4}), map_fn::Scale{0.5f}).values(), (std::vector<float>{1, 2}));
    EXPECT_EQ(map(Buffer::from({2, 4}), map_fn::AddScalar{-1.0f}).values(), (std::vector<float>{1, 3}));
    EXPECT_THROW(map(Buffer::from({-1}), map_fn::Sqrt{}), DomainError);
}

TEST(Buffer, Reductions) {
    EXPECT_EQ(sum(Buffer::from({1, 2, 3})), 6.0f);
    EXPECT_EQ(max(Buffer::from({-3, -7})), -3.0f);
    Buffer m({2, 2}, {0.1f, 0.9f, 0.5f, 0.5f});
    EXPECT_EQ(argmax_last_axis(m), (std::vector<std::size_t>{1, 0}));
}

TEST(Matmul, Examples) {
    Buffer a({2, 2}, {1, 2, 3, 4});
    Buffer eye({2, 2}, {1, 0, 0, 1});
    EXPECT_EQ(matmul(eye, a), a);
    EXPECT_EQ(matmul(Buffer({1, 2}, {1, 2}), Buffer({2, 1}, {3, 4}))[0], 11.0f);
    EXPECT_THROW(matmul(Buffer({2, 3}), Buffer({2, 3})), ContractViolation);
    EXPECT_EQ(transpose(Buffer({2, 3}, {1, 2, 3, 4, 5, 6})), Buffer({3, 2}, {1, 4, 2, 5, 3, 6}));
}

namespace {
double max_rel_error_vs_oracle(std::size_t m, std::size_t k, std::size_t n, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<float> nd;
    Buffer a({m, k}), b({k, n});
    for (auto& x : a.data()) x = nd(gen);
    for (auto& x : b.data()) x = nd(gen);
    const auto c = matmul(a, b);
    const auto ref = oracle::matmul(std::vector<double>(a.values().begin(), a.values().end()),
                                    std::vector<double>(b.values().begin(), b.values().end()), m, k, n);
    // Relative to the row scale so that near-zero entries do not dominate.
    double worst = 0.0;
    for (std::size_t i = 0; i < m * n; ++i) {
        double scale = 0.0;
        for (std::size_t p = 0; p < k; ++p)
            scale += std::abs(double(a[(i / n) * k + p]) * double(b[p * n + i % n]));
        worst = std::max(worst, std::abs(c[i] - ref[i]) / std::max(scale, 1e-30));
    }
    return worst;
}
}  // namespace

TEST(Matmul, MatchesOracleSmall) { EXPECT_LE(max_rel_error_vs_oracle(3, 3, 3, 3), 1e-5); }

TEST(Matmul, MatchesOracle64) { EXPECT_LE(max_rel_error_vs_oracle(64, 64, 64, 11), 1e-5); }

TEST(Matmul, OddShapesAcrossTiles) { EXPECT_LE(max_rel_error_vs_oracle(37, 301, 263, 5), 1e-5); }

TEST(Gemm, TransposedAndAccumulate) {
    std::mt19937 gen(2);
    std::normal_distribution<float> nd;
    const std::size_t m = 5, k = 7, n = 9;
    std::vector<float> a(m * k), b(k * n), at(k * m);
    for (auto& x : a) x = nd(gen);
    for (auto& x : b) x = nd(gen);
    gemm::transpose(a, at, m, k);
    std::vector<float> c1(m * n), c2(m * n);
    gemm::nn(a, b, c1, m, k, n);
    gemm::tn(at, b, c2, m, k, n);
    EXPECT_EQ(c1, c2);
    gemm::nn(a, b, c1, m, k, n, true);
    for (std::size_t i = 0; i < c1.size(); ++i) EXPECT_NEAR(c1[i], 2 * c2[i], 1e-5 * (1 + std::abs(c2[i])));
}

TEST(Matmul, Deterministic) {
    Rng rng(3);
    Buffer a({70, 130}), b({130, 300});
    for (auto& x : a.data()) x = static_cast<float>(rng.normal());
    for (auto& x : b.data()) x = static_cast<float>(rng.normal());
    EXPECT_EQ(matmul(a, b), matmul(a, b));
}

// Published Philox4x32-10 known-answer vectors.
TEST(Philox, KnownAnswers) {
    EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Rng, UniformOpenInterval) {
    EXPECT_GT(uniform_open01(0, 0), 0.0);
    EXPECT_LT(uniform_open01(0xffffffff, 0xffffffff), 1.0);
    Rng rng(9);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform(-2.0, 3.0);
        ASSERT_GT(u, -2.0);
        ASSERT_LT(u, 3.0);
    }
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a(5, 1), b(5, 1), c(5, 2);
    bool differs = false;
    for (int i = 0; i < 64; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        differs = differs || x != c.next_u64();
    }
    EXPECT_TRUE(differs);
}

TEST(Rng, BelowIsInRangeAndCoversValues) {
    Rng rng(4);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto v = rng.below(7);
        ASSERT_LT(v, 7u);
        ++hist[v];
    }
    for (int h : hist) EXPECT_GT(h, 800);
}

TEST(KeyedNormals, Moments) {
    std::vector<double> x(1'000'000);
    keyed_normals(x, 42, 0, 1);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= double(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= double(x.size() - 1);
    EXPECT_NEAR(mean, 0.0, 0.005);
    EXPECT_NEAR(var, 1.0, 0.01);
}

TEST(KeyedNormals, FloatMatchesDoubleAndPrefixStable) {
    std::vector<double> d(1001);
    std::vector<float> f(1001), shorter(17);
    keyed_normals(d, 8, 3, 12);
    keyed_normals(f, 8, 3, 12);
    keyed_normals(shorter, 8, 3, 12);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f[i], static_cast<float>(d[i]));
    for (std::size_t i = 0; i < shorter.size(); ++i) EXPECT_EQ(shorter[i], f[i]);
}
