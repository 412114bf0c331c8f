#include "gel/algebra.hpp"

#include <algorithm>
#include <optional>

namespace gel {

void Element::add(const Path &mu, const Path &nu, const Scalar &c) {
    if (mu.length() != m_ || nu.length() != n_)
        throw std::invalid_argument("word does not match element bidegree");
    if (mu.range != nu.range)
        throw std::invalid_argument("word S_mu S_nu^* with r(mu) != r(nu) is zero");
    if (c.is_zero())
        return;
    auto [it, fresh] = terms_.try_emplace(Word{mu, nu}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void Element::add(Path &&mu, Path &&nu, Scalar &&c) {
    if (mu.length() != m_ || nu.length() != n_)
        throw std::invalid_argument("word does not match element bidegree");
    if (mu.range != nu.range)
        throw std::invalid_argument("word S_mu S_nu^* with r(mu) != r(nu) is zero");
    if (c.is_zero())
        return;
    Word key{std::move(mu), std::move(nu)};
    auto it = terms_.lower_bound(key);
    if (it != terms_.end() && it->first == key) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
        return;
    }
    terms_.emplace_hint(it, std::move(key), std::move(c));
}

Scalar Element::coefficient(const Path &mu, const Path &nu) const {
    auto it = terms_.find(Word{mu, nu});
    return it == terms_.end() ? Scalar() : it->second;
}

StarAlgebra::StarAlgebra(GraphPtr g) : g_(std::move(g)) { require_no_sinks(*g_); }

Element StarAlgebra::one() const {
    Element x(0, 0);
    for (std::size_t v = 0; v < g_->num_vertices(); ++v) {
        Path p = Path::vertex(static_cast<VertexId>(v));
        x.add(p, p, 1);
    }
    return x;
}

Element StarAlgebra::vertex(VertexId v) const {
    Element x(0, 0);
    Path p = Path::vertex(v);
    x.add(p, p, 1);
    return x;
}

Element StarAlgebra::word(const Path &mu, const Path &nu, const Scalar &c) const {
    Element x(mu.length(), nu.length());
    x.add(mu, nu, c);
    return x;
}

Element StarAlgebra::generator(EdgeId e) const {
    return word(Path::edge(*g_, e), Path::vertex(g_->range(e)));
}

Element StarAlgebra::lift(const Element &x) const {
    Element out(x.m() + 1, x.n() + 1);
    for (const auto &[w, c] : x.terms()) {
        for (EdgeId e : g_->emitted(w.left.range)) {
            Path mu = w.left, nu = w.right;
            if (mu.is_vertex())
                mu = Path::edge(*g_, e);
            else {
                mu.edges.push_back(e);
                mu.range = g_->range(e);
            }
            if (nu.is_vertex())
                nu = Path::edge(*g_, e);
            else {
                nu.edges.push_back(e);
                nu.range = g_->range(e);
            }
            out.add(std::move(mu), std::move(nu), Scalar(c));
        }
    }
    return out;
}

Element StarAlgebra::embed(const Element &x, std::size_t m2, std::size_t n2) const {
    if (m2 < x.m() || n2 < x.n() || m2 - x.m() != n2 - x.n())
        throw std::invalid_argument("embedding must raise both degrees equally");
    if (m2 == x.m())
        return x;
    Element cur = lift(x);
    while (cur.m() < m2)
        cur = lift(cur);
    return cur;
}

Element StarAlgebra::multiply(const Element &x, const Element &y) const {
    const std::size_t inner = std::max(x.n(), y.m());
    // lift only the operand whose inner degree is short
    std::optional<Element> xl, yl;
    if (x.n() < inner)
        xl = embed(x, x.m() + (inner - x.n()), inner);
    if (y.m() < inner)
        yl = embed(y, inner, y.n() + (inner - y.m()));
    const Element &a = xl ? *xl : x;
    const Element &b = yl ? *yl : y;
    Element out(a.m(), b.n());
    const auto &bt = b.terms();
    for (const auto &[w, c] : a.terms()) {
        Word probe{w.right, Path{}};
        for (auto it = bt.lower_bound(probe); it != bt.end() && it->first.left == w.right; ++it)
            out.add(Path(w.left), Path(it->first.right), c * it->second);
    }
    return out;
}

Element StarAlgebra::adjoint(const Element &x) const {
    Element out(x.n(), x.m());
    for (const auto &[w, c] : x.terms())
        out.add(w.right, w.left, c.conj());
    return out;
}

Element StarAlgebra::add(const Element &x, const Element &y) const {
    if (x.grade() != y.grade())
        throw GradeMismatch("cannot add elements of different gauge grade");
    std::size_t m = std::max(x.m(), y.m());
    std::size_t shift = m - x.m();
    Element out = embed(x, m, x.n() + shift);
    Element b = embed(y, m, out.n());
    for (const auto &[w, c] : b.terms())
        out.add(w.left, w.right, c);
    return out;
}

Element StarAlgebra::sub(const Element &x, const Element &y) const {
    return add(x, scale(Scalar(-1), y));
}

Element StarAlgebra::scale(const Scalar &c, const Element &x) const {
    Element out(x.m(), x.n());
    for (const auto &[w, d] : x.terms())
        out.add(w.left, w.right, c * d);
    return out;
}

bool StarAlgebra::equals(const Element &x, const Element &y) const {
    if (x.grade() != y.grade())
        throw GradeMismatch("cannot compare elements of different gauge grade");
    // terms never hold zero coefficients, so equal elements have equal term maps
    if (x.m() < y.m())
        return embed(x, y.m(), y.n()).terms() == y.terms();
    if (y.m() < x.m())
        return x.terms() == embed(y, x.m(), x.n()).terms();
    return x.terms() == y.terms();
}

Element StarAlgebra::reduce(const Element &x) const {
    if (x.is_zero()) {
        std::size_t d = std::min(x.m(), x.n());
        return Element(x.m() - d, x.n() - d);
    }
    Element cur = x;
    while (cur.m() > 0 && cur.n() > 0) {
        // group terms by the words obtained by dropping the shared last edge
        std::map<Word, std::vector<std::pair<EdgeId, const Scalar *>>> groups;
        bool ok = true;
        for (const auto &[w, c] : cur.terms()) {
            EdgeId e = w.left.edges.back();
            if (w.right.edges.back() != e) {
                ok = false;
                break;
            }
            Path mu = prefix(*g_, w.left, w.left.length() - 1);
            Path nu = prefix(*g_, w.right, w.right.length() - 1);
            groups[Word{mu, nu}].emplace_back(e, &c);
        }
        if (!ok)
            break;
        Element down(cur.m() - 1, cur.n() - 1);
        for (const auto &[w, list] : groups) {
            const auto &need = g_->emitted(w.left.range);
            if (list.size() != need.size()) {
                ok = false;
                break;
            }
            for (const auto &[e, c] : list)
                if (*c != *list.front().second) {
                    ok = false;
                    break;
                }
            if (!ok)
                break;
            down.add(w.left, w.right, *list.front().second);
        }
        if (!ok)
            break;
        cur = std::move(down);
    }
    return cur;
}

Element StarAlgebra::shift(const Element &x) const {
    Element out(x.m() + 1, x.n() + 1);
    for (const auto &[w, c] : x.terms()) {
        if (w.left.source != w.right.source)
            continue;
        for (EdgeId e : g_->received(w.left.source)) {
            Path mu{g_->source(e), w.left.range, {e}};
            mu.edges.insert(mu.edges.end(), w.left.edges.begin(), w.left.edges.end());
            Path nu{g_->source(e), w.right.range, {e}};
            nu.edges.insert(nu.edges.end(), w.right.edges.begin(), w.right.edges.end());
            out.add(mu, nu, c);
        }
    }
    return out;
}

Element StarAlgebra::shift(const Element &x, std::size_t times) const {
    Element cur = x;
    for (std::size_t i = 0; i < times; ++i)
        cur = shift(cur);
    return cur;
}

bool StarAlgebra::commutes_with_vertex_projections(const Element &x) const {
    return std::all_of(x.terms().begin(), x.terms().end(),
                       [](const auto &t) { return t.first.left.source == t.first.right.source; });
}

bool StarAlgebra::is_unitary(const Element &u) const {
    if (u.m() != u.n())
        return false;
    Element id = one();
    return equals(multiply(u, adjoint(u)), id) && equals(multiply(adjoint(u), u), id);
}

void StarAlgebra::require_local_unitary(const Element &u) const {
    if (u.m() != u.n())
        throw std::invalid_argument("unitary must have bidegree (k,k)");
    if (!commutes_with_vertex_projections(u))
        throw std::invalid_argument("unitary does not commute with the vertex projections");
    if (!is_unitary(u))
        throw std::invalid_argument("element is not unitary");
}

std::vector<Element> StarAlgebra::cocycles(const Element &u, std::size_t rmax) const {
    if (!commutes_with_vertex_projections(u))
        throw std::invalid_argument("unitary does not commute with the vertex projections");
    std::vector<Element> out;
    out.push_back(one());
    if (rmax == 0)
        return out;
    out.push_back(u);
    Element shifted = u;
    for (std::size_t r = 2; r <= rmax; ++r) {
        shifted = shift(shifted);
        out.push_back(multiply(out.back(), shifted));
    }
    return out;
}

Element StarAlgebra::cocycle(const Element &u, std::size_t r) const {
    return cocycles(u, r).back();
}

Element StarAlgebra::lambda(const Element &u, const Element &x) const {
    require_local_unitary(u);
    auto us = cocycles(u, std::max(x.m(), x.n()));
    return multiply(multiply(us[x.m()], x), adjoint(us[x.n()]));
}

Element StarAlgebra::ad(const Element &u, const Element &x) const {
    require_local_unitary(u);
    return multiply(multiply(u, x), adjoint(u));
}

std::string StarAlgebra::format_word(const Word &w) const {
    if (w.left.is_vertex() && w.right.is_vertex())
        return "P_" + g_->vertex_name(w.left.source);
    std::string out;
    for (EdgeId e : w.left.edges) {
        if (!out.empty())
            out += '.';
        out += "S_" + g_->edge(e).name;
    }
    for (auto it = w.right.edges.rbegin(); it != w.right.edges.rend(); ++it) {
        if (!out.empty())
            out += '.';
        out += "S_" + g_->edge(*it).name + "*";
    }
    return out;
}

std::string StarAlgebra::format(const Element &x) const {
    if (x.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto &[w, c] : x.terms()) {
        Scalar coef = c;
        bool negative = coef.is_real() && sgn(coef.re()) < 0;
        if (negative)
            coef = -coef;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (!coef.is_one()) {
            if (coef.is_real())
                out += coef.str() + " ";
            else
                out += "(" + coef.str() + ") ";
        }
        out += format_word(w);
    }
    return out;
}

} // namespace gel
