#include "fixtures.hpp"
#include "gel/permutation.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace gel;

namespace {

std::vector<std::uint64_t> factorials(std::size_t n) {
    std::vector<std::uint64_t> f(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i)
        f[i] = f[i - 1] * i;
    return f;
}

std::uint64_t block_factorial_product(const Graph &g, std::size_t k) {
    auto f = factorials(20);
    std::uint64_t total = 1;
    for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
        for (VertexId w = 0; w < static_cast<VertexId>(g.num_vertices()); ++w)
            total *= f[block(g, v, w, k).size()];
    return total;
}

} // namespace

TEST(Enumerate, Counts) {
    EXPECT_EQ(Enumeration(fixtures::fib(), 2).count(), 2u);
    EXPECT_EQ(Enumeration(fixtures::fib(), 3).count(), 24u);
    EXPECT_EQ(Enumeration(fixtures::ex62(), 2).count(), 8u);
    EXPECT_EQ(Enumeration(fixtures::ex62(), 3).count(), 373248u);
    for (auto g : {fixtures::fib(), fixtures::ex62(), fixtures::o2()})
        for (std::size_t k = 1; k <= 3; ++k)
            EXPECT_EQ(*Enumeration(g, k).count(), block_factorial_product(*g, k));
}

TEST(Enumerate, DistinctIdentityFirst) {
    for (auto [g, k] : {std::pair{fixtures::fib(), 3}, std::pair{fixtures::ex62(), 2},
                        std::pair{fixtures::cuntz(2), 3}}) {
        Enumeration en(g, static_cast<std::size_t>(k));
        auto list = en.all();
        EXPECT_TRUE(list.front().is_identity());
        std::set<std::vector<std::uint32_t>> seen;
        for (const auto &p : list)
            EXPECT_TRUE(seen.insert(p.image()).second);
        EXPECT_EQ(seen.size(), *en.count());
    }
}

TEST(Enumerate, CapGuard) {
    Enumeration en(fixtures::ex62(), 3);
    EXPECT_THROW(en.require_within(1000), CapExceeded);
    Enumeration huge(fixtures::ex62(), 6);
    EXPECT_FALSE(huge.count().has_value());
    EXPECT_THROW(huge.for_each([](std::uint64_t, const BlockPermutation &) {}), CapExceeded);
}

TEST(Cycles, ParseConventions) {
    auto f = fixtures::fib();
    auto tu = parse_cycles(f, 3, "(111 132 321)(113 323)");
    auto at = [&](const char *lit) { return format_path(*f, tu.apply(parse_path(*f, lit))); };
    EXPECT_EQ(at("111"), "132");
    EXPECT_EQ(at("113"), "323");
    EXPECT_EQ(at("132"), "321");
    EXPECT_EQ(at("321"), "111");
    EXPECT_EQ(at("323"), "113");
    EXPECT_EQ(at("211"), "211");
    EXPECT_EQ(tu.cycles(), "(111 132 321)(113 323)");
    EXPECT_EQ(parse_cycles(f, 2, "(11,32)"), parse_cycles(f, 2, "(11 32)"));
    EXPECT_TRUE(parse_cycles(f, 2, "id").is_identity());
    EXPECT_NO_THROW(parse_cycles(fixtures::ex62(), 2, "(25 63)"));
    EXPECT_THROW(parse_cycles(fixtures::ex62(), 2, "(11 25)"), std::invalid_argument);
    EXPECT_THROW(parse_cycles(f, 2, "(11 11)"), std::invalid_argument);
    EXPECT_THROW(parse_cycles(f, 2, "(111 132)"), std::invalid_argument);
    EXPECT_THROW(parse_cycles(f, 2, "(11 32"), std::invalid_argument);
    EXPECT_THROW(parse_cycles(f, 2, "11 32"), std::invalid_argument);
}

TEST(Cycles, RoundTrip) {
    auto e = fixtures::ex62();
    for (const auto &p : Enumeration(e, 2).all())
        EXPECT_EQ(parse_cycles(e, 2, p.cycles()), p);
}

TEST(ToUnitary, Properties) {
    auto f = fixtures::fib();
    StarAlgebra alg(f);
    EXPECT_TRUE(alg.equals(to_unitary(alg, BlockPermutation::identity(f, 2)), alg.one()));
    for (const auto &p : Enumeration(f, 3).all()) {
        Element u = to_unitary(alg, p);
        EXPECT_TRUE(alg.commutes_with_vertex_projections(u));
        EXPECT_TRUE(alg.equals(alg.multiply(u, alg.adjoint(u)), alg.one()));
    }
    auto e = fixtures::ex62();
    StarAlgebra a2(e);
    auto all = Enumeration(e, 2).all();
    for (const auto &p : all)
        for (const auto &q : all)
            EXPECT_TRUE(a2.equals(to_unitary(a2, p * q),
                                  a2.multiply(to_unitary(a2, p), to_unitary(a2, q))));
}

TEST(Level, EmbedAndReduce) {
    auto e = fixtures::ex62();
    StarAlgebra alg(e);
    for (const auto &p : Enumeration(e, 2).all()) {
        auto up = embed(p, 4);
        EXPECT_EQ(up.level(), 4u);
        EXPECT_TRUE(alg.equals(to_unitary(alg, up), to_unitary(alg, p)));
        EXPECT_EQ(reduce_level(up), reduce_level(p));
    }
    auto f = fixtures::fib();
    auto t = parse_cycles(f, 2, "(11 32)");
    EXPECT_EQ(reduce_level(t).level(), 2u);
    auto quasi = parse_cycles(fixtures::o2(), 1, "(a b)");
    EXPECT_EQ(reduce_level(embed(quasi, 3)), quasi);
    EXPECT_EQ(reduce_level(BlockPermutation::identity(f, 3)).level(), 1u);
}

TEST(Level, ShiftWindowMatchesAlgebra) {
    auto f = fixtures::fib();
    StarAlgebra alg(f);
    for (const auto &p : Enumeration(f, 2).all()) {
        Element u = to_unitary(alg, p);
        for (std::size_t j = 0; j <= 2; ++j)
            EXPECT_TRUE(alg.equals(to_unitary(alg, act_at(p, 2 + j, j)), alg.shift(u, j)));
        for (std::size_t r = 1; r <= 3; ++r)
            EXPECT_TRUE(alg.equals(to_unitary(alg, cocycle(p, r)), alg.cocycle(u, r)));
    }
}

TEST(StarCompose, MatchesAlgebra) {
    auto f = fixtures::fib();
    StarAlgebra alg(f);
    auto l2 = Enumeration(f, 2).all();
    auto l3 = Enumeration(f, 3).all();
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        const auto &u = l3[rng() % l3.size()];
        const auto &w = t % 2 ? l2[rng() % l2.size()] : l3[rng() % l3.size()];
        auto c = star_compose(u, w);
        EXPECT_EQ(c.level(), u.level() + w.level() - 1);
        Element U = to_unitary(alg, u);
        Element expect = alg.multiply(alg.lambda(U, to_unitary(alg, w)), U);
        EXPECT_TRUE(alg.equals(to_unitary(alg, c), expect));
        // composition law on the generators
        for (EdgeId e = 0; e < 3; ++e) {
            Element s = alg.generator(e);
            EXPECT_TRUE(alg.equals(alg.lambda(to_unitary(alg, c), s),
                                   alg.lambda(U, alg.lambda(to_unitary(alg, w), s))));
        }
    }
}

TEST(StarCompose, IdentityAndAssociativity) {
    auto e = fixtures::ex62();
    auto all = Enumeration(e, 2).all();
    auto id = BlockPermutation::identity(e, 2);
    for (const auto &u : all) {
        EXPECT_EQ(reduce_level(star_compose(u, id)), reduce_level(u));
        EXPECT_EQ(reduce_level(star_compose(id, u)), reduce_level(u));
    }
    for (const auto &a : all)
        for (const auto &b : all) {
            const auto &c = all[(a.digest() ^ b.digest()) % all.size()];
            EXPECT_EQ(reduce_level(star_compose(star_compose(a, b), c)),
                      reduce_level(star_compose(a, star_compose(b, c))));
        }
    auto sigma = parse_cycles(e, 2, "(25 63)");
    auto sq = star_compose(sigma, sigma);
    EXPECT_EQ(sq.level(), 3u);
    EXPECT_TRUE(sq.is_identity());
    EXPECT_EQ(reduce_level(sq).level(), 1u);
}

TEST(Invert, Examples) {
    auto e = fixtures::ex62();
    auto sigma = parse_cycles(e, 2, "(25 63)");
    EXPECT_EQ(invert(sigma), sigma);
    EXPECT_TRUE(invert(BlockPermutation::identity(e, 2)).is_identity());
    for (const auto &q : Enumeration(e, 1).all())
        EXPECT_EQ(invert(q), q.inverse());
    auto t = parse_cycles(fixtures::fib(), 2, "(11 32)");
    EXPECT_FALSE(try_invert(t).inverse.has_value());
    EXPECT_THROW(invert(t), CapExceeded);
}

TEST(Invert, DoubleInverse) {
    auto o = fixtures::cuntz(2);
    for (const auto &p : Enumeration(o, 2).all()) {
        auto r = try_invert(p);
        if (!r.inverse)
            continue;
        EXPECT_EQ(reduce_level(invert(*r.inverse)), reduce_level(p));
    }
}

TEST(Order, Examples) {
    auto e = fixtures::ex62();
    EXPECT_EQ(order_up_to(parse_cycles(e, 2, "(25 63)"), 64).order, 2u);
    EXPECT_EQ(order_up_to(BlockPermutation::identity(e, 2), 64).order, 1u);
    auto f = fixtures::fib();
    auto tu = parse_cycles(f, 3, "(111 132 321)(113 323)");
    auto r = order_up_to(tu, 64);
    EXPECT_FALSE(r.order.has_value());
    EXPECT_FALSE(r.invertible);
    auto q = parse_cycles(fixtures::cuntz(3), 1, "(a b c)");
    EXPECT_EQ(order_up_to(q, 64).order, 3u);
    EXPECT_FALSE(order_up_to(q, 2).order.has_value());
}
