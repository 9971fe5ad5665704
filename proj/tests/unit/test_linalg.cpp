#include <gtest/gtest.h>

#include <random>

#include "singcat/linalg.hpp"

using namespace singcat::linalg;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Scalar>(rng() % prime());
    return m;
}

// Count vectors in F_p^n killed by m, by enumeration.
std::size_t brute_kernel_size(const Matrix& m) {
    std::size_t n = m.cols(), total = 1, hits = 0;
    for (std::size_t i = 0; i < n; ++i) total *= prime();
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Scalar> v(n);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= prime()) v[i] = static_cast<Scalar>(c % prime());
        hits += (m * Matrix::column_vector(v)).is_zero();
    }
    return hits;
}

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

class LinalgP : public ::testing::TestWithParam<Scalar> {
protected:
    void SetUp() override { set_prime(GetParam()); }
};

TEST_P(LinalgP, FieldArithmetic) {
    Scalar p = prime();
    for (Scalar a = 1; a < p; ++a) {
        EXPECT_EQ(mul(a, inv(a)), 1u);
        EXPECT_EQ(add(a, neg(a)), 0u);
    }
    EXPECT_EQ(reduce(-1), p - 1);
    EXPECT_EQ(reduce(static_cast<long long>(p) * 5 + 1), 1u);
}

TEST_P(LinalgP, RankNullityAgainstEnumeration) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
        Matrix m = random_matrix(r, c, rng);
        Matrix k = kernel_basis(m);
        EXPECT_EQ(rank(m) + k.cols(), c);
        EXPECT_TRUE((m * k).is_zero() || k.cols() == 0);
        EXPECT_EQ(ipow(prime(), k.cols()), brute_kernel_size(m));
        EXPECT_EQ(image_basis(m).cols(), rank(m));
    }
}

TEST_P(LinalgP, SolveAndInverse) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        Matrix a = random_matrix(4, 3, rng), x = random_matrix(3, 1, rng);
        Matrix b = a * x;
        auto s = solve(a, b);
        ASSERT_TRUE(s.has_value());
        EXPECT_EQ(a * *s, b);
        Matrix sq = random_matrix(3, 3, rng);
        auto inv = inverse(sq);
        EXPECT_EQ(inv.has_value(), rank(sq) == 3);
        if (inv) EXPECT_EQ(sq * *inv, Matrix::identity(3));
    }
    Matrix z(2, 2);
    EXPECT_FALSE(solve(z, Matrix::column_vector({1, 0})).has_value());
}

TEST_P(LinalgP, SpacesIntersectAndSum) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 30; ++t) {
        Matrix a = random_matrix(5, 2, rng), b = random_matrix(5, 3, rng);
        std::size_t ra = rank(a), rb = rank(b);
        std::size_t s = sum_spaces(a, b).cols(), i = intersect_spaces(a, b).cols();
        EXPECT_EQ(s + i, ra + rb);
        Matrix comp = complement_basis(a, 5);
        EXPECT_EQ(rank(Matrix::hstack(a, comp)), 5u);
    }
}

TEST_P(LinalgP, RrefIsReduced) {
    std::mt19937_64 rng(17);
    Matrix m = random_matrix(4, 6, rng);
    Echelon e = rref(m);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
        EXPECT_EQ(e.form(k, e.pivots[k]), 1u);
        for (std::size_t r = 0; r < e.form.rows(); ++r)
            if (r != k) EXPECT_EQ(e.form(r, e.pivots[k]), 0u);
    }
}

INSTANTIATE_TEST_SUITE_P(Primes, LinalgP, ::testing::Values(2u, 3u, 5u));

}  // namespace
