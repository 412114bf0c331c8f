#include "gel/localized.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace gel {

CoreBasis::CoreBasis(GraphPtr g, std::size_t level) : g_(std::move(g)), level_(level) {
    const auto all = paths(*g_, level);
    for (const auto &p : all)
        words_.push_back(Word{p, p});
    diagonal_ = words_.size();
    for (const auto &a : all)
        for (const auto &b : all)
            if (a != b && a.range == b.range)
                words_.push_back(Word{a, b});
    for (std::size_t i = 0; i < words_.size(); ++i)
        index_.emplace(words_[i], i);
}

Vec CoreBasis::coordinates(const StarAlgebra &alg, const Element &x) const {
    if (x.m() != x.n() || x.m() > level_)
        throw std::invalid_argument("element does not lie in F^" + std::to_string(level_));
    Element at = alg.embed(x, level_, level_);
    Vec v(words_.size());
    for (const auto &[w, c] : at.terms())
        v[index_.at(w)] = c;
    return v;
}

Element CoreBasis::element(const Vec &v) const {
    Element x(level_, level_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        x.add(words_[i].left, words_[i].right, v[i]);
    return x;
}

Subspace CoreBasis::vertex_span() const {
    std::vector<Vec> gens;
    for (std::size_t v = 0; v < g_->num_vertices(); ++v) {
        Vec p(words_.size());
        for (std::size_t i = 0; i < diagonal_; ++i)
            if (words_[i].left.source == static_cast<VertexId>(v))
                p[i] = 1;
        gens.push_back(std::move(p));
    }
    return Subspace::span(words_.size(), gens);
}

Subspace CoreBasis::diagonal() const {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < diagonal_; ++i) {
        Vec p(words_.size());
        p[i] = 1;
        gens.push_back(std::move(p));
    }
    return Subspace::span(words_.size(), gens);
}

LocalizedUnitary::LocalizedUnitary(const StarAlgebra &alg, Element u)
    : alg_(&alg), u_(std::move(u)), basis_(alg.graph_ptr(), u_.m() == 0 ? 0 : u_.m() - 1) {
    if (u_.m() != u_.n() || u_.m() == 0)
        throw std::invalid_argument("a localized unitary has bidegree (k, k) with k >= 1");
    if (!alg.commutes_with_vertex_projections(u_))
        throw std::invalid_argument("unitary does not commute with the vertex projections");
    if (!alg.is_unitary(u_))
        throw std::invalid_argument("element is not unitary");

    const Graph &g = alg.graph();
    const std::size_t ne = g.num_edges();
    const Element ustar = alg.adjoint(u_);
    std::vector<Element> left(ne), right(ne);
    for (EdgeId e = 0; e < static_cast<EdgeId>(ne); ++e) {
        right[e] = alg.generator(e);
        left[e] = alg.adjoint(right[e]);
    }
    a_.assign(ne * ne, Matrix(basis_.size(), basis_.size()));
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        const Word &w = basis_[j];
        Element y = alg.multiply(alg.multiply(ustar, alg.word(w.left, w.right)), u_);
        for (EdgeId e = 0; e < static_cast<EdgeId>(ne); ++e) {
            Element ey = alg.multiply(left[e], y);
            for (EdgeId f = 0; f < static_cast<EdgeId>(ne); ++f) {
                Vec col = basis_.coordinates(alg, alg.multiply(ey, right[f]));
                Matrix &m = a_[e * ne + f];
                for (std::size_t i = 0; i < col.size(); ++i)
                    m.at(i, j) = col[i];
            }
        }
    }
}

const Matrix &LocalizedUnitary::a_matrix(EdgeId e, EdgeId f) const {
    return a_.at(static_cast<std::size_t>(e) * alg_->graph().num_edges() + f);
}

bool LocalizedUnitary::normalizes_diagonal() const {
    for (const auto &p : paths(alg_->graph(), level())) {
        Element x = alg_->ad(u_, alg_->projection(p));
        for (const auto &[w, c] : x.terms())
            if (w.left != w.right)
                return false;
    }
    return true;
}

namespace {

ChainResult run_chain(const LocalizedUnitary &lu, Subspace start) {
    ChainResult res;
    const Subspace d0 = lu.basis().vertex_span();
    Subspace cur = std::move(start);
    res.dims.push_back(cur.dim());
    for (;;) {
        std::vector<Vec> gens;
        for (const auto &x : cur.basis())
            for (const auto &m : lu.maps())
                gens.push_back(m.apply(x));
        Subspace next = Subspace::span(cur.ambient(), gens);
        if (next == cur)
            break;
        res.dims.push_back(next.dim());
        cur = std::move(next);
    }
    res.verdict = d0.contains(cur);
    res.stable = std::move(cur);
    return res;
}

} // namespace

ChainResult LocalizedUnitary::xi() const {
    return run_chain(*this, Subspace::whole(basis_.size()));
}

ChainResult LocalizedUnitary::xi_d() const {
    if (!normalizes_diagonal())
        throw std::invalid_argument("unitary does not normalize the diagonal");
    return run_chain(*this, basis_.diagonal());
}

NilpotencyResult LocalizedUnitary::ring_nilpotent() const {
    // V = F^{k-1} / span{P_v}, coordinatized by the non-pivot columns of the
    // canonical echelon basis of span{P_v}
    const Subspace d0 = basis_.vertex_span();
    const std::size_t n = basis_.size();
    std::vector<std::size_t> free_cols;
    std::vector<bool> pivot(n, false);
    for (auto p : d0.pivots())
        pivot[p] = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!pivot[i])
            free_cols.push_back(i);
    const std::size_t q = free_cols.size();

    std::vector<Matrix> tilde;
    for (const auto &a : a_) {
        Matrix t(q, q);
        for (std::size_t j = 0; j < q; ++j) {
            Vec unit(n);
            unit[free_cols[j]] = 1;
            Vec img = d0.reduce(a.apply(unit));
            for (std::size_t i = 0; i < q; ++i)
                t.at(i, j) = img[free_cols[i]];
        }
        tilde.push_back(std::move(t));
    }

    NilpotencyResult res;
    res.quotient_dim = q;
    Subspace cur = Subspace::whole(q);
    res.dims.push_back(cur.dim());
    while (cur.dim() > 0) {
        std::vector<Vec> gens;
        for (const auto &x : cur.basis())
            for (const auto &t : tilde)
                gens.push_back(t.apply(x));
        Subspace next = Subspace::span(q, gens);
        if (next == cur)
            break;
        res.dims.push_back(next.dim());
        cur = std::move(next);
    }
    res.nilpotent = cur.dim() == 0;
    return res;
}

StabilizeResult LocalizedUnitary::stabilize_inverse(std::optional<std::size_t> cap) const {
    const StarAlgebra &alg = *alg_;
    StabilizeResult res;
    res.cap = cap.value_or(basis_.size() + 2);
    // u_m = u shift(u_{m-1}) and u^* u_m = shift(u_{m-1}), so w_m = u_m^* shift(u_{m-1})
    Element um = u_;
    Element shifted = alg.one();
    std::optional<Element> prev;
    for (std::size_t m = 1; m <= res.cap; ++m) {
        res.iterations = m;
        if (m > 1) {
            shifted = alg.shift(um);
            um = alg.multiply(u_, shifted);
        }
        Element wm = alg.reduce(m == 1 ? alg.adjoint(u_) : alg.multiply(alg.adjoint(um), shifted));
        if (prev && alg.equals(*prev, wm)) {
            Element check = alg.multiply(alg.lambda(u_, wm), u_);
            if (alg.equals(check, alg.one())) {
                res.inverse = std::move(wm);
                return res;
            }
        }
        prev = std::move(wm);
    }
    return res;
}

namespace {

std::string read_file(const std::string &file) {
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot open " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Element parse_localized(const StarAlgebra &alg, std::string_view json_text) {
    using nlohmann::json;
    const Graph &g = alg.graph();
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ParseError(0, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("level") || !doc["level"].is_number_unsigned())
        throw ParseError(0, "localized unitary needs an unsigned \"level\"");
    const std::size_t k = doc["level"].get<std::size_t>();
    if (k == 0)
        throw ParseError(0, "level must be at least 1");

    const std::size_t nv = g.num_vertices();
    std::vector<std::optional<json>> given(nv * nv);
    if (doc.contains("blocks")) {
        if (!doc["blocks"].is_array())
            throw ParseError(0, "\"blocks\" must be an array");
        for (const auto &b : doc["blocks"]) {
            if (!b.is_object() || !b.contains("range") || !b.contains("source") ||
                !b.contains("matrix"))
                throw ParseError(0, "each block needs range, source and matrix");
            auto v = g.find_vertex(b["range"].get<std::string>());
            auto w = g.find_vertex(b["source"].get<std::string>());
            if (!v || !w)
                throw ParseError(0, "unknown vertex in block");
            auto &slot = given[*v * nv + *w];
            if (slot)
                throw ParseError(0, "block given twice");
            slot = b["matrix"];
        }
    }

    Element u(k, k);
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t w = 0; w < nv; ++w) {
            auto paths_vw = block(g, static_cast<VertexId>(v), static_cast<VertexId>(w), k);
            const auto &m = given[v * nv + w];
            if (!m) {
                for (const auto &p : paths_vw)
                    u.add(p, p, 1);
                continue;
            }
            const std::size_t n = paths_vw.size();
            if (!m->is_array() || m->size() != n)
                throw ParseError(0, "block " + g.vertex_name(v) + "," + g.vertex_name(w) +
                                        " must be " + std::to_string(n) + "x" +
                                        std::to_string(n));
            for (std::size_t i = 0; i < n; ++i) {
                const auto &row = (*m)[i];
                if (!row.is_array() || row.size() != n)
                    throw ParseError(0, "ragged matrix row");
                for (std::size_t j = 0; j < n; ++j) {
                    Scalar c = row[j].is_string() ? Scalar::parse(row[j].get<std::string>())
                               : row[j].is_number_integer() ? Scalar(row[j].get<long>())
                                                            : throw ParseError(0, "entry is not exact");
                    u.add(paths_vw[i], paths_vw[j], c);
                }
            }
        }
    if (!alg.is_unitary(u))
        throw std::invalid_argument("matrix blocks do not form a unitary");
    return u;
}

Element load_localized(const StarAlgebra &alg, const std::string &file) {
    return parse_localized(alg, read_file(file));
}

std::string localized_to_json(const StarAlgebra &alg, const Element &u) {
    using nlohmann::ordered_json;
    const Graph &g = alg.graph();
    ordered_json doc;
    doc["level"] = u.m();
    doc["blocks"] = ordered_json::array();
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        for (std::size_t w = 0; w < g.num_vertices(); ++w) {
            auto ps = block(g, static_cast<VertexId>(v), static_cast<VertexId>(w), u.m());
            if (ps.empty())
                continue;
            ordered_json rows = ordered_json::array();
            for (const auto &a : ps) {
                ordered_json row = ordered_json::array();
                for (const auto &b : ps)
                    row.push_back(u.coefficient(a, b).str());
                rows.push_back(std::move(row));
            }
            doc["blocks"].push_back({{"range", g.vertex_name(v)},
                                     {"source", g.vertex_name(w)},
                                     {"matrix", std::move(rows)}});
        }
    return doc.dump(2) + "\n";
}

} // namespace gel
