#pragma once

#include "gel/cond_b.hpp"

#include <string>
#include <vector>

namespace gel {

/// One point of a partial map f_{e,g}: (alpha, beta) -> (gamma, delta),
/// all four as indices into E^{k-1}.
struct FGEntry {
    EdgeId e;
    EdgeId g;
    int alpha;
    int beta;
    int gamma;
    int delta;
};

/// The maps f_{e,g}; (alpha, beta) is in the domain iff sigma(e alpha) and
/// sigma(g beta) end with the same edge. Domain and image are off-diagonal.
struct FGMapFamily {
    std::shared_ptr<const PathTable> paths; // E^{k-1}
    std::vector<FGEntry> entries;           // sorted by (e, g, alpha, beta)

    const Graph &graph() const { return paths->graph(); }
    /// Delta_u: off-diagonal pairs lying in some domain, sorted.
    std::vector<std::pair<int, int>> delta() const;
};

FGMapFamily fg_maps(const BlockPermutation &p);

/// Acyclicity of the digraph on off-diagonal pairs of equal range with arcs
/// (alpha, beta) -> f_{e,g}(alpha, beta). Labels are {e, g}.
DecisionCertificate decide_d(const BlockPermutation &p);
bool replay_d(const BlockPermutation &p, const DecisionCertificate &c);

/// Iterates the set of pairs still alive after m maps; true iff it empties
/// for some m <= max_m.
bool brute_force_d(const BlockPermutation &p, std::size_t max_m);

enum class Classification { Automorphism, DiagonalAutomorphismOnly, Proper };

std::string to_string(Classification c);

struct ClassifyResult {
    Classification kind;
    BlockPermutation reduced;
    DecisionCertificate b;
    DecisionCertificate d;
};

/// Both conditions on the lowest-level representative.
ClassifyResult classify(const BlockPermutation &p);

} // namespace gel
