#include "fixtures.hpp"
#include "gel/ktheory.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gel;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    IntMatrix m;
    for (auto r : rows) {
        m.emplace_back();
        for (long x : r)
            m.back().emplace_back(x);
    }
    return m;
}

std::vector<long> factors(const SNFResult &s) {
    std::vector<long> out;
    for (const auto &d : s.factors)
        out.push_back(d.get_si());
    return out;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t> &cur,
             std::vector<std::vector<std::size_t>> &out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Invariant factors as ratios of determinantal divisors: D_k is the gcd of
// all k x k minors and d_k = D_k / D_{k-1}.
std::vector<mpz_class> minors_oracle(const IntMatrix &m) {
    const std::size_t rows = m.size(), cols = m[0].size();
    std::vector<mpz_class> out;
    mpz_class prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        mpz_class g = 0;
        for (const auto &r : rs)
            for (const auto &c : cs) {
                IntMatrix sub(k, std::vector<mpz_class>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        sub[i][j] = m[r[i]][c[j]];
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), determinant(sub).get_mpz_t());
            }
        if (g == 0) {
            out.resize(std::min(rows, cols), 0);
            return out;
        }
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

void expect_valid(const IntMatrix &m, const SNFResult &s) {
    EXPECT_EQ(multiply(multiply(s.u, m), s.v), s.d);
    EXPECT_EQ(abs(determinant(s.u)), 1);
    EXPECT_EQ(abs(determinant(s.v)), 1);
    for (std::size_t i = 0; i < s.d.size(); ++i)
        for (std::size_t j = 0; j < s.d[i].size(); ++j)
            if (i != j)
                EXPECT_EQ(s.d[i][j], 0);
    for (std::size_t i = 0; i < s.factors.size(); ++i) {
        EXPECT_GE(s.factors[i], 0);
        if (i + 1 < s.factors.size() && s.factors[i] != 0)
            EXPECT_EQ(s.factors[i + 1] % s.factors[i], 0);
    }
}

} // namespace

TEST(SNF, Examples) {
    EXPECT_EQ(factors(smith_normal_form(mat({{1, 0}, {0, 1}}))), (std::vector<long>{1, 1}));
    auto m = mat({{0, -1, 0}, {-1, 1, -1}, {0, -1, 0}});
    auto s = smith_normal_form(m);
    EXPECT_EQ(factors(s), (std::vector<long>{1, 1, 0}));
    expect_valid(m, s);
    EXPECT_EQ(factors(smith_normal_form(mat({{0, -1}, {-1, 1}}))), (std::vector<long>{1, 1}));
    EXPECT_EQ(factors(smith_normal_form(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}))),
              (std::vector<long>{2, 6, 12}));
    EXPECT_EQ(factors(smith_normal_form(mat({{0, 0}, {0, 0}}))), (std::vector<long>{0, 0}));
}

TEST(SNF, RandomAgainstMinorsOracle) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> entry(-6, 6), dim(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix m(r, std::vector<mpz_class>(c));
        for (auto &row : m)
            for (auto &x : row)
                x = trial % 3 == 0 ? 2 * entry(rng) : entry(rng);
        auto s = smith_normal_form(m);
        expect_valid(m, s);
        EXPECT_EQ(s.factors, minors_oracle(m)) << "trial " << trial;
    }
}

TEST(SNF, Determinant) {
    EXPECT_EQ(determinant(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})), -144);
    EXPECT_EQ(determinant(mat({{0, 1}, {1, 0}})), -1);
    EXPECT_EQ(determinant(mat({{1, 2}, {2, 4}})), 0);
}

TEST(KTheory, FixtureGraphs) {
    auto ex = k_groups(*fixtures::ex62());
    EXPECT_EQ(ex.k0.str(), "Z");
    EXPECT_EQ(ex.k1.str(), "Z");
    auto fib = k_groups(*fixtures::fib());
    EXPECT_EQ(fib.k0.str(), "0");
    EXPECT_EQ(fib.k1.str(), "0");
    EXPECT_EQ(factors(fib.snf), (std::vector<long>{1, 1}));
}

TEST(KTheory, CuntzAlgebras) {
    for (int n = 2; n <= 6; ++n) {
        auto k = k_groups(*fixtures::cuntz(n));
        EXPECT_EQ(k.k0.str(), n == 2 ? "0" : "Z/" + std::to_string(n - 1));
        EXPECT_EQ(k.k1.str(), "0");
    }
}

TEST(KTheory, InvariantUnderVertexReordering) {
    // A = [[1, 2], [1, 2]], det(I - A^t) = -2
    auto a = parse_graph("vertex p\nvertex q\nedge a p p\nedge b p q\nedge c p q\nedge d q p\n"
                         "edge e q q\nedge f q q\n");
    auto b = parse_graph("vertex q\nvertex p\nedge e q q\nedge d q p\nedge f q q\nedge c p q\n"
                         "edge a p p\nedge b p q\n");
    EXPECT_EQ(k_groups(a).k0, k_groups(b).k0);
    EXPECT_EQ(k_groups(a).k1, k_groups(b).k1);
    EXPECT_EQ(k_groups(a).k0.str(), "Z/2");
}

TEST(KTheory, GroupStrings) {
    AbelianGroup g{2, {mpz_class(2), mpz_class(6)}};
    EXPECT_EQ(g.str(), "Z^2 ⊕ Z/2 ⊕ Z/6");
    EXPECT_EQ((AbelianGroup{1, {mpz_class(2)}}).str(), "Z ⊕ Z/2");
}

TEST(KTheory, RejectsSinks) {
    auto g = parse_graph("vertex x\nvertex y\nedge a x y\nedge b x x\n");
    EXPECT_THROW(k_groups(g), ValidationError);
}
