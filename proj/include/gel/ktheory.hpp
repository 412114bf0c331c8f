#pragma once

// Smith normal form over the integers and the K-groups of a graph algebra.

#include "gel/graph.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gel {

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// U * M * V = D with U, V unimodular, D diagonal, d_1 | d_2 | ... and d_i >= 0.
struct SNFResult {
    IntMatrix u;
    IntMatrix v;
    IntMatrix d;
    std::vector<mpz_class> factors; // min(rows, cols) diagonal entries of d

    std::size_t rank() const;
};

SNFResult smith_normal_form(const IntMatrix &m);

IntMatrix multiply(const IntMatrix &a, const IntMatrix &b);
/// Exact determinant of a square matrix (Bareiss elimination).
mpz_class determinant(IntMatrix m);

/// Z^free_rank plus cyclic factors Z/t, each t >= 2 and t_i | t_{i+1}.
struct AbelianGroup {
    std::size_t free_rank = 0;
    std::vector<mpz_class> torsion;

    /// "0", "Z", "Z^2 ⊕ Z/2", ...
    std::string str() const;
    friend bool operator==(const AbelianGroup &, const AbelianGroup &) = default;
};

/// coker of an integer matrix read off its invariant factors.
AbelianGroup cokernel(const SNFResult &s, std::size_t rows);

struct KGroups {
    AbelianGroup k0;
    AbelianGroup k1;
    SNFResult snf; // of I - A^t
};

/// K0 = coker(I - A^t) and K1 = ker(I - A^t). Throws ValidationError on sinks.
KGroups k_groups(const Graph &g);

} // namespace gel
