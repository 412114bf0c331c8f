#include "fixtures.hpp"
#include "gel/cond_d.hpp"
#include "gel/localized.hpp"

#include <gtest/gtest.h>

using namespace gel;

namespace {

Element rotation_unitary(const StarAlgebra &alg, const std::string &a, const std::string &b,
                         std::size_t k, const Scalar &c, const Scalar &s) {
    // c, s real with c^2 + s^2 = 1; rotation on span{S_a, S_b}, identity elsewhere
    const Graph &g = alg.graph();
    Path pa = parse_path(g, a), pb = parse_path(g, b);
    Element u(k, k);
    for (const auto &p : paths(g, k))
        if (p != pa && p != pb)
            u.add(p, p, 1);
    u.add(pa, pa, c);
    u.add(pa, pb, -s);
    u.add(pb, pa, s);
    u.add(pb, pb, c);
    return u;
}

Element diagonal_unitary(const StarAlgebra &alg, std::size_t k, const std::vector<Scalar> &phases) {
    Element u(k, k);
    auto ps = paths(alg.graph(), k);
    for (std::size_t i = 0; i < ps.size(); ++i)
        u.add(ps[i], ps[i], phases[i % phases.size()]);
    return u;
}

} // namespace

TEST(Localized, DiagonalBlockIsFMap) {
    for (auto [g, k, cyc] : {std::tuple{fixtures::fib(), 3, "(111 132 321)(113 323)"},
                             std::tuple{fixtures::ex62(), 2, "(25 63)"},
                             std::tuple{fixtures::fib(), 3, "(132 321)(211 232)"}}) {
        StarAlgebra alg(g);
        auto p = parse_cycles(g, k, cyc);
        LocalizedUnitary lu(alg, to_unitary(alg, p));
        FMapFamily f = f_maps(p);
        const CoreBasis &b = lu.basis();
        ASSERT_EQ(b.diagonal_size(), f.paths->size());
        for (EdgeId e = 0; e < static_cast<EdgeId>(g->num_edges()); ++e) {
            const Matrix &a = lu.a_matrix(e, e);
            for (std::size_t row = 0; row < b.diagonal_size(); ++row)
                for (std::size_t col = 0; col < b.diagonal_size(); ++col)
                    EXPECT_EQ(a.at(row, col), Scalar(f.map[e][row] == static_cast<int>(col) ? 1 : 0));
        }
    }
}

TEST(Localized, MapsPreserveVertexSpanAndMatchFormula) {
    for (auto g : {fixtures::fib(), fixtures::ex62()}) {
        StarAlgebra alg(g);
        Enumeration(g, 2).for_each([&](std::uint64_t, const BlockPermutation &p) {
            Element u = to_unitary(alg, p);
            LocalizedUnitary lu(alg, u);
            const Subspace d0 = lu.basis().vertex_span();
            for (const auto &a : lu.maps())
                for (const auto &x : d0.basis())
                    EXPECT_TRUE(d0.contains(a.apply(x)));
            // spot check a_{e,f}(x) = S_e^* u^* x u S_f on every basis word
            for (std::size_t j = 0; j < lu.basis().size(); ++j) {
                const Word &w = lu.basis()[j];
                Element x = alg.word(w.left, w.right);
                for (EdgeId e = 0; e < static_cast<EdgeId>(g->num_edges()); ++e) {
                    EdgeId f = static_cast<EdgeId>((e + j) % g->num_edges());
                    Element direct = alg.multiply(
                        alg.multiply(alg.adjoint(alg.generator(e)),
                                     alg.multiply(alg.multiply(alg.adjoint(u), x), u)),
                        alg.generator(f));
                    Vec col(lu.basis().size());
                    for (std::size_t i = 0; i < col.size(); ++i)
                        col[i] = lu.a_matrix(e, f).at(i, j);
                    EXPECT_TRUE(alg.equals(direct, lu.basis().element(col)));
                }
            }
        });
    }
}

TEST(Localized, ReferenceVerdicts) {
    StarAlgebra ex(fixtures::ex62()), fib(fixtures::fib());
    LocalizedUnitary sigma(ex, to_unitary(ex, parse_cycles(ex.graph_ptr(), 2, "(25 63)")));
    EXPECT_TRUE(sigma.xi().verdict);
    EXPECT_TRUE(sigma.xi_d().verdict);
    EXPECT_TRUE(sigma.ring_nilpotent().nilpotent);

    LocalizedUnitary bad(fib, to_unitary(fib, parse_cycles(fib.graph_ptr(), 2, "(11 32)")));
    EXPECT_FALSE(bad.xi().verdict);
    EXPECT_FALSE(bad.xi_d().verdict);
    EXPECT_FALSE(bad.ring_nilpotent().nilpotent);
    auto st = bad.stabilize_inverse();
    EXPECT_FALSE(st.inverse);
    EXPECT_EQ(st.iterations, st.cap);

    LocalizedUnitary tu(fib, to_unitary(fib, parse_cycles(fib.graph_ptr(), 3, "(111 132 321)(113 323)")));
    EXPECT_TRUE(tu.xi_d().verdict);
    EXPECT_FALSE(tu.xi().verdict);
}

TEST(Localized, ChainsAreMonotone) {
    StarAlgebra alg(fixtures::fib());
    Enumeration(alg.graph_ptr(), 3).for_each([&](std::uint64_t, const BlockPermutation &p) {
        LocalizedUnitary lu(alg, to_unitary(alg, p));
        auto c = lu.xi();
        for (std::size_t r = 1; r < c.dims.size(); ++r)
            EXPECT_LT(c.dims[r], c.dims[r - 1]);
        EXPECT_LE(c.dims.size(), lu.basis().size() + 1);
        auto n = lu.ring_nilpotent();
        EXPECT_EQ(n.nilpotent, c.verdict) << p.cycles();
        EXPECT_EQ(lu.xi_d().verdict, decide_b(p).verdict) << p.cycles();
    });
}

TEST(Localized, QuasiFreeIsAutomorphism) {
    StarAlgebra o2(fixtures::o2());
    Element rot = rotation_unitary(o2, "a", "b", 1, Scalar(mpq_class(3, 5)), Scalar(mpq_class(4, 5)));
    LocalizedUnitary lu(o2, rot);
    EXPECT_EQ(lu.basis().size(), 1u);
    EXPECT_EQ(lu.xi().dims.front(), 1u);
    EXPECT_TRUE(lu.xi().verdict);
    EXPECT_EQ(lu.ring_nilpotent().quotient_dim, 0u);
    EXPECT_TRUE(lu.ring_nilpotent().nilpotent);
    auto st = lu.stabilize_inverse();
    ASSERT_TRUE(st.inverse);
    EXPECT_TRUE(o2.equals(*st.inverse, o2.adjoint(rot)));
}

TEST(Localized, StabilizedInverseMatchesPermutationInverse) {
    for (auto [g, k] : {std::pair{fixtures::fib(), 2}, std::pair{fixtures::ex62(), 2},
                        std::pair{fixtures::ex62(), 1}}) {
        StarAlgebra alg(g);
        Enumeration(g, static_cast<std::size_t>(k)).for_each([&](std::uint64_t, const BlockPermutation &p) {
            if (classify(p).kind != Classification::Automorphism)
                return;
            LocalizedUnitary lu(alg, to_unitary(alg, p));
            auto st = lu.stabilize_inverse();
            ASSERT_TRUE(st.inverse) << p.cycles();
            EXPECT_TRUE(alg.equals(*st.inverse, to_unitary(alg, invert(p))));
            EXPECT_TRUE(alg.equals(alg.multiply(alg.lambda(lu.unitary(), *st.inverse), lu.unitary()),
                                   alg.one()));
        });
    }
    StarAlgebra ex(fixtures::ex62());
    auto sigma = parse_cycles(ex.graph_ptr(), 2, "(25 63)");
    auto st = LocalizedUnitary(ex, to_unitary(ex, sigma)).stabilize_inverse();
    ASSERT_TRUE(st.inverse);
    EXPECT_TRUE(ex.equals(*st.inverse, to_unitary(ex, sigma)));
}

TEST(Localized, NonPermutativeEquivalence) {
    StarAlgebra o2(fixtures::o2());
    StarAlgebra fib(fixtures::fib());
    Scalar c(mpq_class(3, 5)), s(mpq_class(4, 5));
    Scalar h(mpq_class(1, 2), mpq_class(1, 2));
    std::vector<std::pair<const StarAlgebra *, Element>> cases = {
        {&o2, rotation_unitary(o2, "aa", "ba", 2, c, s)},
        {&o2, rotation_unitary(o2, "aa", "ab", 2, c, s)},
        {&o2, rotation_unitary(o2, "ab", "ba", 2, c, s)},
        {&o2, rotation_unitary(o2, "aa", "bb", 2, c, s)},
        {&fib, rotation_unitary(fib, "11", "32", 2, c, s)},
        {&o2, diagonal_unitary(o2, 2, {Scalar(1), Scalar(0, 1), Scalar(-1), Scalar(0, -1)})},
        {&fib, diagonal_unitary(fib, 3, {Scalar(1), Scalar(0, 1), Scalar(-1)})},
    };
    // a unitary with a Gaussian-rational non-real block: [[h, conj h], [conj h, h]] / 1
    {
        Element u(2, 2);
        Path aa = parse_path(o2.graph(), "aa"), ab = parse_path(o2.graph(), "ab");
        u.add(aa, aa, h);
        u.add(aa, ab, h.conj());
        u.add(ab, aa, h.conj());
        u.add(ab, ab, h);
        for (const char *p : {"ba", "bb"}) {
            Path q = parse_path(o2.graph(), p);
            u.add(q, q, 1);
        }
        cases.emplace_back(&o2, u);
    }
    std::size_t invertible = 0;
    for (const auto &[alg, u] : cases) {
        LocalizedUnitary lu(*alg, u);
        bool xi = lu.xi().verdict;
        invertible += xi;
        EXPECT_EQ(lu.ring_nilpotent().nilpotent, xi) << alg->format(u);
        EXPECT_EQ(lu.stabilize_inverse().inverse.has_value(), xi) << alg->format(u);
    }
    // the set mixes both verdicts
    EXPECT_GT(invertible, 0u);
    EXPECT_LT(invertible, cases.size());
    // diagonal unitaries fix the diagonal pointwise
    for (std::size_t i = 5; i < 7; ++i) {
        LocalizedUnitary lu(*cases[i].first, cases[i].second);
        EXPECT_TRUE(lu.normalizes_diagonal());
        EXPECT_TRUE(lu.xi_d().verdict);
    }
    LocalizedUnitary rot(o2, cases[0].second);
    EXPECT_FALSE(rot.normalizes_diagonal());
    EXPECT_THROW(rot.xi_d(), std::invalid_argument);
}

TEST(Localized, RejectsBadInput) {
    StarAlgebra o2(fixtures::o2());
    Element notunit(1, 1);
    for (const auto &p : paths(o2.graph(), 1))
        notunit.add(p, p, 2);
    EXPECT_THROW(LocalizedUnitary(o2, notunit), std::invalid_argument);
    StarAlgebra fib(fixtures::fib());
    // S_1 S_2^* + ... mixes sources, so it does not commute with P_A, P_B
    Element mix(1, 1);
    mix.add(parse_path(fib.graph(), "1"), parse_path(fib.graph(), "2"), 1);
    mix.add(parse_path(fib.graph(), "2"), parse_path(fib.graph(), "1"), 1);
    mix.add(parse_path(fib.graph(), "3"), parse_path(fib.graph(), "3"), 1);
    EXPECT_THROW(LocalizedUnitary(fib, mix), std::invalid_argument);
}

TEST(LocalizedJson, RoundTripAndDefaults) {
    StarAlgebra o2(fixtures::o2());
    Element u = rotation_unitary(o2, "aa", "ba", 2, Scalar(mpq_class(3, 5)), Scalar(mpq_class(4, 5)));
    std::string text = localized_to_json(o2, u);
    EXPECT_TRUE(o2.equals(parse_localized(o2, text), u));

    StarAlgebra ex(fixtures::ex62());
    Element id = parse_localized(ex, R"({"level": 2, "blocks": []})");
    EXPECT_TRUE(ex.equals(id, ex.one()));
    Element sw = parse_localized(
        ex, R"({"level": 2, "blocks": [{"range": "v2", "source": "v2", "matrix": [["0","1"],["1","0"]]}]})");
    EXPECT_TRUE(ex.equals(sw, to_unitary(ex, parse_cycles(ex.graph_ptr(), 2, "(25 63)"))));

    EXPECT_THROW(parse_localized(ex, "{"), ParseError);
    EXPECT_THROW(parse_localized(ex, R"({"level": 2, "blocks": [{"range": "v2", "source": "v2", "matrix": [["1"]]}]})"),
                 ParseError);
    EXPECT_THROW(parse_localized(ex, R"({"level": 2, "blocks": [{"range": "v9", "source": "v2", "matrix": []}]})"),
                 ParseError);
    EXPECT_THROW(parse_localized(ex, R"({"level": 2, "blocks": [{"range": "v2", "source": "v2", "matrix": [["1","1"],["0","1"]]}]})"),
                 std::invalid_argument);
}
