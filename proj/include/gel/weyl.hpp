#pragma once

// Concrete representatives lambda_p o a of the automorphisms generated by
// permutative automorphisms and graph automorphisms.

#include "gel/algebra.hpp"
#include "gel/permutation.hpp"

#include <optional>
#include <string>

namespace gel {

/// The graph automorphism's action on words.
Element apply(const GraphAut &a, const Element &x);

/// a sigma a^{-1} on relabelled paths, so lambda of the result is a o lambda_p o a^{-1}.
BlockPermutation conjugate(const GraphAut &a, const BlockPermutation &p);

/// Order-preserving edge map on parallel classes with the vertex map of a;
/// a times its inverse fixes every vertex.
GraphAut canonical_automorphism(const Graph &g, const GraphAut &a);

/// The level-1 permutation e -> a(e) of a vertex-fixing automorphism.
BlockPermutation vertex_fixing_permutation(GraphPtr g, const GraphAut &a);

/// lambda_perm o aut. Normal form: perm level-reduced, aut canonical.
struct CompositeAut {
    BlockPermutation perm;
    GraphAut aut;

    static CompositeAut identity(GraphPtr g);
    /// Normal form of lambda_p o a.
    static CompositeAut make(const BlockPermutation &p, const GraphAut &a);

    Element apply(const StarAlgebra &alg, const Element &x) const;
    std::string str() const;

    friend bool operator==(const CompositeAut &x, const CompositeAut &y) {
        return x.aut == y.aut && same_endomorphism(x.perm, y.perm);
    }
};

/// x o y. Throws std::invalid_argument unless both permutative parts are
/// invertible.
CompositeAut compose(const CompositeAut &x, const CompositeAut &y);
CompositeAut inverse(const CompositeAut &x);

struct InnerSearch {
    std::size_t max_level = 0;
    std::uint64_t candidates = 0;
    std::optional<BlockPermutation> witness; // w with u = w shift(w^*)
};

/// Searches w in P^l, l <= max_level, with to_unitary(p) = w shift(w^*), so
/// that lambda_p = Ad(w). A hit is confirmed in the algebra.
InnerSearch inner_test(const BlockPermutation &p, std::size_t max_level,
                       std::uint64_t cap = kDefaultEnumerationCap);

struct PropertyPCertificate {
    std::optional<std::size_t> m;
    std::size_t test_depth = 0;
    std::size_t checked = 0; // projections P_mu tested at the accepted m
};

/// Least m <= level with Phi(shift^m(P_mu)) = shift^{m+1}(P_mu) for all
/// |mu| <= test_depth, where Phi(x) = sum_e lambda_p(S_e) x lambda_p(S_e)^*.
PropertyPCertificate property_p_certificate(const BlockPermutation &p, std::size_t test_depth);

} // namespace gel
