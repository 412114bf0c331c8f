#pragma once

#include "gel/permutation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gel {

struct PathPair {
    Path first;
    Path second;
    friend bool operator==(const PathPair &a, const PathPair &b) {
        return a.first == b.first && a.second == b.second;
    }
};

/// Verdict of an acyclicity test on a pair graph, with a replayable witness.
/// Positive: a topological order and the synchronization length m (every
/// composition of m maps collapses or has empty domain). Negative: a cycle
/// where labels[i] carries cycle[i] to cycle[(i + 1) % size].
struct DecisionCertificate {
    bool verdict = true;
    std::size_t nodes = 0;
    std::size_t arcs = 0;
    std::optional<std::size_t> sync_length;
    std::vector<PathPair> order;
    std::vector<PathPair> cycle;
    std::vector<std::vector<EdgeId>> labels;
};

/// f_e as an index table over E^{k-1}; entries outside the domain are -1.
struct FMapFamily {
    std::shared_ptr<const PathTable> paths; // E^{k-1}
    std::vector<std::vector<int>> map;      // map[e][alpha]
    std::vector<std::vector<EdgeId>> last;  // last edge of sigma(e alpha)

    const Graph &graph() const { return paths->graph(); }
    /// f_e as (argument, value) pairs in path order.
    std::vector<std::pair<Path, Path>> table(EdgeId e) const;
};

/// f_e(alpha) = first k-1 edges of sigma(e alpha), for s(alpha) = r(e).
FMapFamily f_maps(const BlockPermutation &p);

/// Pair-graph acyclicity test of the diagonal condition.
DecisionCertificate decide_b(const BlockPermutation &p);
/// Walks a negative certificate through the f-maps and checks it closes.
bool replay_b(const BlockPermutation &p, const DecisionCertificate &c);

/// Literal check over words e_1 ... e_m: true iff some m <= max_m makes
/// every composition f_{e_1} ... f_{e_m} have singleton image.
bool brute_force_b(const BlockPermutation &p, std::size_t max_m);

/// For a loop edge whose map is a rooted tree (one fixed point reached from
/// everywhere), the root.
std::optional<Path> rooted_tree_root(const FMapFamily &f, EdgeId e);

/// DOT rendering of every f_e, roots of rooted loop maps flagged.
std::string export_diagram(const BlockPermutation &p, const std::string &graph_name);
/// `<graph>_<level>_<permhash>_fmaps.dot`.
std::string diagram_filename(const std::string &graph_name, const BlockPermutation &p);

} // namespace gel
