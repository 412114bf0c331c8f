#pragma once

#include "gel/graph.hpp"
#include "gel/scalar.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gel {

/// The word S_left S_right^*. Nonzero only when the two ranges agree.
struct Word {
    Path left;
    Path right;

    friend bool operator<(const Word &a, const Word &b) {
        if (a.left != b.left)
            return a.left < b.left;
        return a.right < b.right;
    }
    friend bool operator==(const Word &a, const Word &b) {
        return a.left == b.left && a.right == b.right;
    }
};

/// Raised when two elements of different gauge grade are compared.
class GradeMismatch : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Finite linear combination of words, all of bidegree (m, n).
class Element {
  public:
    using Terms = std::map<Word, Scalar>;

    Element() = default;
    Element(std::size_t m, std::size_t n) : m_(m), n_(n) {}

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    long grade() const { return static_cast<long>(m_) - static_cast<long>(n_); }

    const Terms &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Accumulates c * S_mu S_nu^*; zero coefficients are dropped.
    void add(const Path &mu, const Path &nu, const Scalar &c);
    void add(Path &&mu, Path &&nu, Scalar &&c);
    Scalar coefficient(const Path &mu, const Path &nu) const;

  private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    Terms terms_;
};

/// Word calculus on one graph. Every operation auto-embeds operands along
/// S_mu S_nu^* = sum_{s(e)=r(mu)} S_{mu e} S_{nu e}^*, which needs the graph
/// to have no sinks; the constructor enforces that.
class StarAlgebra {
  public:
    explicit StarAlgebra(GraphPtr g);

    const Graph &graph() const { return *g_; }
    const GraphPtr &graph_ptr() const { return g_; }

    Element zero(std::size_t m, std::size_t n) const { return Element(m, n); }
    Element one() const;
    Element vertex(VertexId v) const;
    Element word(const Path &mu, const Path &nu, const Scalar &c = 1) const;
    Element generator(EdgeId e) const;
    Element projection(const Path &mu) const { return word(mu, mu); }

    /// Same element written at bidegree (m2, n2).
    Element embed(const Element &x, std::size_t m2, std::size_t n2) const;
    Element multiply(const Element &x, const Element &y) const;
    Element adjoint(const Element &x) const;
    Element add(const Element &x, const Element &y) const;
    Element sub(const Element &x, const Element &y) const;
    Element scale(const Scalar &c, const Element &x) const;
    /// Throws GradeMismatch when m - n differs.
    bool equals(const Element &x, const Element &y) const;

    /// Lowest bidegree at which x is still expressible.
    Element reduce(const Element &x) const;

    Element shift(const Element &x) const;
    Element shift(const Element &x, std::size_t times) const;

    bool commutes_with_vertex_projections(const Element &x) const;
    bool is_unitary(const Element &u) const;

    /// u_r = u shift(u) ... shift^{r-1}(u); u_0 = 1.
    Element cocycle(const Element &u, std::size_t r) const;
    /// [u_0, ..., u_rmax].
    std::vector<Element> cocycles(const Element &u, std::size_t rmax) const;

    /// The localized endomorphism determined by u, applied to x.
    Element lambda(const Element &u, const Element &x) const;
    /// u x u^*.
    Element ad(const Element &u, const Element &x) const;

    std::string format(const Element &x) const;
    std::string format_word(const Word &w) const;

  private:
    void require_local_unitary(const Element &u) const;
    Element lift(const Element &x) const;

    GraphPtr g_;
};

} // namespace gel
