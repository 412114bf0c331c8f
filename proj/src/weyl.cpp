#include "gel/weyl.hpp"

#include "gel/cond_d.hpp"

#include <map>

namespace gel {

Element apply(const GraphAut &a, const Element &x) {
    Element out(x.m(), x.n());
    for (const auto &[w, c] : x.terms())
        out.add(a.apply(w.left), a.apply(w.right), c);
    return out;
}

BlockPermutation conjugate(const GraphAut &a, const BlockPermutation &p) {
    const PathTable &t = p.table();
    std::vector<std::uint32_t> img(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        img[t.index(a.apply(t[i]))] = static_cast<std::uint32_t>(t.index(a.apply(t[p[i]])));
    return BlockPermutation(p.table_ptr(), std::move(img));
}

GraphAut canonical_automorphism(const Graph &g, const GraphAut &a) {
    std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> cls;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e)
        cls[{g.source(e), g.range(e)}].push_back(e);
    GraphAut c{a.vertex_map, std::vector<EdgeId>(g.num_edges())};
    for (const auto &[key, edges] : cls) {
        const auto &target = cls.at({a.vertex_map[key.first], a.vertex_map[key.second]});
        for (std::size_t i = 0; i < edges.size(); ++i)
            c.edge_map[edges[i]] = target[i];
    }
    return c;
}

BlockPermutation vertex_fixing_permutation(GraphPtr g, const GraphAut &a) {
    if (!a.fixes_vertices())
        throw std::invalid_argument("automorphism moves vertices");
    auto t = path_table(g, 1);
    std::vector<std::uint32_t> img(t->size());
    for (std::size_t i = 0; i < t->size(); ++i)
        img[i] = static_cast<std::uint32_t>(t->index(a.apply((*t)[i])));
    return BlockPermutation(t, std::move(img));
}

CompositeAut CompositeAut::identity(GraphPtr g) {
    GraphAut id = GraphAut::identity(*g);
    return {BlockPermutation::identity(std::move(g), 1), std::move(id)};
}

CompositeAut CompositeAut::make(const BlockPermutation &p, const GraphAut &a) {
    // a = c b with c canonical and b = c^{-1} a fixing vertices, b = lambda_tau;
    // lambda_p c lambda_tau = lambda_{p * conj(c, tau)} c
    const Graph &g = p.graph();
    if (!is_graph_automorphism(g, a))
        throw std::invalid_argument("not a graph automorphism");
    GraphAut c = canonical_automorphism(g, a);
    GraphAut b = gel::compose(c.inverse(), a);
    BlockPermutation tau = vertex_fixing_permutation(p.graph_ptr(), b);
    BlockPermutation q = reduce_level(star_compose(p, conjugate(c, tau)));
    return {std::move(q), std::move(c)};
}

Element CompositeAut::apply(const StarAlgebra &alg, const Element &x) const {
    return alg.lambda(to_unitary(alg, perm), gel::apply(aut, x));
}

std::string CompositeAut::str() const {
    return "lambda" + perm.cycles() + " o " + format_graph_aut(perm.graph(), aut);
}

namespace {

void require_invertible(const BlockPermutation &p) {
    if (classify(p).kind != Classification::Automorphism)
        throw std::invalid_argument("permutative part " + p.cycles() + " is not invertible");
}

} // namespace

CompositeAut compose(const CompositeAut &x, const CompositeAut &y) {
    require_invertible(x.perm);
    require_invertible(y.perm);
    // lambda_p a lambda_q b = lambda_p lambda_{conj(a, q)} a b
    BlockPermutation q = star_compose(x.perm, conjugate(x.aut, y.perm));
    return CompositeAut::make(q, gel::compose(x.aut, y.aut));
}

CompositeAut inverse(const CompositeAut &x) {
    require_invertible(x.perm);
    // (lambda_p a)^{-1} = a^{-1} lambda_{p^-1} = lambda_{conj(a^{-1}, p^-1)} a^{-1}
    GraphAut ai = x.aut.inverse();
    return CompositeAut::make(conjugate(ai, invert(x.perm)), ai);
}

namespace {

// Index arithmetic for w shift(w^*) at level l + 1: on gamma = e tail it is
// w applied to the first l edges of e w^{-1}(tail).
class CoboundaryTables {
  public:
    CoboundaryTables(const GraphPtr &g, std::size_t l)
        : small_(path_table(g, l)), big_(path_table(g, l + 1)) {
        const Graph &gr = *g;
        const std::size_t ne = gr.num_edges(), ns = small_->size();
        join_head_.assign(ne * ns, -1);
        join_last_.assign(ns * ne, -1);
        for (std::size_t i = 0; i < big_->size(); ++i) {
            const Path &x = (*big_)[i];
            EdgeId h = x.edges.front(), t = x.edges.back();
            std::size_t tl = small_->index(suffix(gr, x, l)), pr = small_->index(prefix(gr, x, l));
            head_.push_back(h);
            tail_.push_back(static_cast<std::uint32_t>(tl));
            pre_.push_back(static_cast<std::uint32_t>(pr));
            last_.push_back(t);
            join_head_[h * ns + tl] = static_cast<int>(i);
            join_last_[pr * ne + t] = static_cast<int>(i);
        }
    }

    std::size_t level() const { return big_->level(); }

    bool matches(const std::vector<std::uint32_t> &w, const std::vector<std::uint32_t> &target,
                 std::vector<std::uint32_t> &winv) const {
        const std::size_t ne = big_->graph().num_edges(), ns = small_->size();
        for (std::size_t i = 0; i < w.size(); ++i)
            winv[w[i]] = static_cast<std::uint32_t>(i);
        for (std::size_t i = 0; i < head_.size(); ++i) {
            int d = join_head_[head_[i] * ns + winv[tail_[i]]];
            int c = join_last_[w[pre_[d]] * ne + last_[d]];
            if (static_cast<std::uint32_t>(c) != target[i])
                return false;
        }
        return true;
    }

  private:
    std::shared_ptr<const PathTable> small_, big_;
    std::vector<EdgeId> head_, last_;
    std::vector<std::uint32_t> tail_, pre_;
    std::vector<int> join_head_, join_last_;
};

} // namespace

InnerSearch inner_test(const BlockPermutation &p, std::size_t max_level, std::uint64_t cap) {
    InnerSearch res;
    res.max_level = max_level;
    StarAlgebra alg(p.graph_ptr());
    const Element u = to_unitary(alg, p);
    const BlockPermutation target = reduce_level(p);
    for (std::size_t l = 1; l <= max_level; ++l) {
        Enumeration en(p.graph_ptr(), l);
        en.require_within(cap);
        std::optional<CoboundaryTables> fast;
        std::vector<std::uint32_t> goal, winv(en.table_ptr()->size());
        if (target.level() <= l + 1) {
            fast.emplace(p.graph_ptr(), l);
            goal = embed(target, l + 1).image();
        }
        bool found = false;
        en.for_each(
            [&](std::uint64_t, const BlockPermutation &w) {
                if (found)
                    return;
                ++res.candidates;
                if (fast) {
                    if (!fast->matches(w.image(), goal, winv))
                        return;
                } else {
                    BlockPermutation cand = embed(w, l + 1) * act_at(w.inverse(), l + 1, 1);
                    if (!same_endomorphism(cand, target))
                        return;
                }
                Element wu = to_unitary(alg, w);
                if (alg.equals(alg.multiply(wu, alg.shift(alg.adjoint(wu))), u)) {
                    res.witness = reduce_level(w);
                    found = true;
                }
            },
            cap);
        if (found)
            return res;
    }
    return res;
}

PropertyPCertificate property_p_certificate(const BlockPermutation &p, std::size_t test_depth) {
    PropertyPCertificate res;
    res.test_depth = test_depth;
    StarAlgebra alg(p.graph_ptr());
    const Graph &g = alg.graph();
    const Element u = to_unitary(alg, p);
    std::vector<Element> images;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e)
        images.push_back(alg.lambda(u, alg.generator(e)));
    auto Phi = [&](const Element &x) {
        Element acc(x.m() + 1, x.n() + 1);
        for (const auto &s : images)
            acc = alg.add(acc, alg.multiply(alg.multiply(s, x), alg.adjoint(s)));
        return acc;
    };

    std::vector<Path> probes;
    for (std::size_t d = 0; d <= test_depth; ++d)
        for (auto &mu : paths(g, d))
            probes.push_back(std::move(mu));

    for (std::size_t m = 0; m <= p.level(); ++m) {
        bool ok = true;
        for (const auto &mu : probes) {
            Element x = alg.shift(alg.projection(mu), m);
            if (!alg.equals(Phi(x), alg.shift(x))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            res.m = m;
            res.checked = probes.size();
            return res;
        }
    }
    return res;
}

} // namespace gel
