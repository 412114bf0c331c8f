#pragma once

// Linear-algebra criteria for localized unitaries u in F^k that commute
// with the vertex projections. Every map acts on F^{k-1}.

#include "gel/algebra.hpp"
#include "gel/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gel {

/// Words S_mu S_nu^* with |mu| = |nu| = level and r(mu) = r(nu); the
/// diagonal words (mu = nu) come first, each group in path order.
class CoreBasis {
  public:
    CoreBasis(GraphPtr g, std::size_t level);

    std::size_t level() const { return level_; }
    std::size_t size() const { return words_.size(); }
    std::size_t diagonal_size() const { return diagonal_; }
    const Word &operator[](std::size_t i) const { return words_[i]; }

    /// x must lie in F^level (it is embedded up when written lower).
    Vec coordinates(const StarAlgebra &alg, const Element &x) const;
    Element element(const Vec &v) const;

    /// span{P_v}, where P_v = sum over s(mu) = v of P_mu.
    Subspace vertex_span() const;
    /// D^level.
    Subspace diagonal() const;

  private:
    GraphPtr g_;
    std::size_t level_;
    std::vector<Word> words_;
    std::size_t diagonal_ = 0;
    std::map<Word, std::size_t> index_;
};

struct ChainResult {
    bool verdict = false;
    std::vector<std::size_t> dims; // dim Xi_0, dim Xi_1, ... up to the repeat
    Subspace stable;
};

struct NilpotencyResult {
    bool nilpotent = false;
    std::size_t quotient_dim = 0;
    std::vector<std::size_t> dims; // dim A^r V for r = 0, 1, ...
};

struct StabilizeResult {
    std::optional<Element> inverse; // lowest bidegree representative
    std::size_t iterations = 0;
    std::size_t cap = 0;
};

/// A unitary of F^k commuting with the vertex projections, with the maps
/// a_{e,f}(x) = S_e^* u^* x u S_f on F^{k-1} precomputed.
class LocalizedUnitary {
  public:
    /// Throws std::invalid_argument unless u is such a unitary of bidegree (k, k), k >= 1.
    LocalizedUnitary(const StarAlgebra &alg, Element u);

    const StarAlgebra &algebra() const { return *alg_; }
    const Element &unitary() const { return u_; }
    std::size_t level() const { return u_.m(); }
    const CoreBasis &basis() const { return basis_; }
    const Matrix &a_matrix(EdgeId e, EdgeId f) const;
    /// All a_{e,f}, indexed e * |E| + f.
    const std::vector<Matrix> &maps() const { return a_; }

    /// u P_mu u^* is diagonal for every |mu| = k.
    bool normalizes_diagonal() const;

    ChainResult xi() const;
    /// Throws std::invalid_argument when u does not normalize the diagonal.
    ChainResult xi_d() const;
    NilpotencyResult ring_nilpotent() const;
    /// w_m = u_m^* u^* u_m until two consecutive values agree; the limit is
    /// returned only after lambda_u(w) u = 1 is verified.
    StabilizeResult stabilize_inverse(std::optional<std::size_t> cap = std::nullopt) const;

  private:
    const StarAlgebra *alg_;
    Element u_;
    CoreBasis basis_;
    std::vector<Matrix> a_; // index e * |E| + f
};

/// Localized unitary file: {"level": k, "blocks": [{"range": v, "source": w,
/// "matrix": [[entry, ...], ...]}]}. Rows and columns follow block(v, w, k);
/// row i, column j is the coefficient of S_{beta_i} S_{beta_j}^*. Omitted
/// blocks are the identity. Entries are exact strings ("1/2", "-1/2+1/2 i").
Element parse_localized(const StarAlgebra &alg, std::string_view json_text);
Element load_localized(const StarAlgebra &alg, const std::string &file);
std::string localized_to_json(const StarAlgebra &alg, const Element &u);

} // namespace gel
