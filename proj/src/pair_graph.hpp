#pragma once

// Digraph on pair indices shared by the two condition checks.

#include "gel/cond_b.hpp"

#include <vector>

namespace gel::detail {

struct Arc {
    int to;
    std::vector<EdgeId> label;
};

struct PairGraph {
    std::vector<std::pair<int, int>> pairs; // path indices at level k-1
    std::vector<std::vector<Arc>> out;
};

/// DFS for a cycle, longest-path DP otherwise.
DecisionCertificate analyze(const PairGraph &g, const PathTable &t);

} // namespace gel::detail
