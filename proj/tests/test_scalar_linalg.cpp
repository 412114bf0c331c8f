#include "gel/linalg.hpp"
#include "gel/scalar.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gel;

TEST(Scalar, ParseAndPrint) {
    EXPECT_EQ(Scalar::parse("3/6").str(), "1/2");
    EXPECT_EQ(Scalar::parse("1/2+3/4 i").str(), "1/2+3/4 i");
    EXPECT_EQ(Scalar::parse("1/2-3/4i").str(), "1/2-3/4 i");
    EXPECT_EQ(Scalar::parse("-i").str(), "-i");
    EXPECT_EQ(Scalar::parse("i"), Scalar::imag_unit());
    EXPECT_EQ(Scalar::parse(" -2 "), Scalar(-2));
    EXPECT_EQ(Scalar::parse("0/5"), Scalar());
    EXPECT_THROW(Scalar::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(Scalar::parse("x"), std::invalid_argument);
    EXPECT_THROW(Scalar::parse(""), std::invalid_argument);
    for (const char *s : {"7", "-7/3", "2 i", "-1/3+i", "5-2/7 i"})
        EXPECT_EQ(Scalar::parse(Scalar::parse(s).str()), Scalar::parse(s));
}

TEST(Scalar, FieldArithmetic) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int t = 0; t < 200; ++t) {
        Scalar a(mpq_class(d(rng), 1 + (d(rng) + 9)), mpq_class(d(rng), 3));
        Scalar b(mpq_class(d(rng), 2), mpq_class(d(rng), 1 + (d(rng) + 9)));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) - b, a);
        EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
        if (!b.is_zero())
            EXPECT_EQ((a / b) * b, a);
    }
    EXPECT_EQ(Scalar::imag_unit() * Scalar::imag_unit(), Scalar(-1));
    EXPECT_THROW(Scalar(1) / Scalar(), std::domain_error);
}

TEST(Linalg, SpanIsCanonical) {
    std::vector<Vec> a{{1, 2, 3}, {2, 4, 7}};
    std::vector<Vec> b{{0, 0, 1}, {3, 6, 0}, {1, 2, 3}};
    auto sa = Subspace::span(3, a);
    auto sb = Subspace::span(3, b);
    EXPECT_EQ(sa.dim(), 2u);
    EXPECT_EQ(sa, sb);
    EXPECT_TRUE(sa.contains(Vec{5, 10, 1}));
    EXPECT_FALSE(sa.contains(Vec{0, 1, 0}));
    EXPECT_EQ(Subspace::span(3, {{0, 0, 0}}).dim(), 0u);
    EXPECT_EQ(Subspace::whole(3).dim(), 3u);
}

TEST(Linalg, ComplexEntries) {
    Scalar i = Scalar::imag_unit();
    auto s = Subspace::span(2, {{1, i}});
    EXPECT_TRUE(s.contains(Vec{i, Scalar(-1)}));
    EXPECT_FALSE(s.contains(Vec{1, Scalar(-1) * i}));
}

TEST(Linalg, ReduceVanishesOnPivots) {
    auto s = Subspace::span(4, {{1, 1, 0, 0}, {0, 0, 1, 1}});
    Vec r = s.reduce(Vec{3, 5, 7, 2});
    for (auto p : s.pivots())
        EXPECT_TRUE(r[p].is_zero());
    EXPECT_FALSE(is_zero(r));
}

TEST(Linalg, MatrixRank) {
    Matrix m(3, 3);
    int vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            m.at(r, c) = vals[r][c];
    EXPECT_EQ(rank(m), 2u);
    EXPECT_EQ(rank(Matrix::identity(4)), 4u);
    EXPECT_EQ(m * Matrix::identity(3), m);
}
