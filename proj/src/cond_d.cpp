#include "gel/cond_d.hpp"

#include "pair_graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gel {

std::vector<std::pair<int, int>> FGMapFamily::delta() const {
    std::set<std::pair<int, int>> s;
    for (const auto &x : entries)
        s.emplace(x.alpha, x.beta);
    return {s.begin(), s.end()};
}

FGMapFamily fg_maps(const BlockPermutation &p) {
    const Graph &g = p.graph();
    FMapFamily f = f_maps(p);
    FGMapFamily out;
    out.paths = f.paths;
    const std::size_t n = f.paths->size();
    const auto ne = static_cast<EdgeId>(g.num_edges());
    for (EdgeId e = 0; e < ne; ++e)
        for (EdgeId h = 0; h < ne; ++h)
            for (std::size_t a = 0; a < n; ++a) {
                if (f.map[e][a] < 0)
                    continue;
                for (std::size_t b = 0; b < n; ++b) {
                    if (a == b || f.map[h][b] < 0 || f.last[e][a] != f.last[h][b])
                        continue;
                    out.entries.push_back({e, h, static_cast<int>(a), static_cast<int>(b),
                                           f.map[e][a], f.map[h][b]});
                }
            }
    return out;
}

namespace {

// Off-diagonal pairs of equal range; pairs of unequal range are zero words.
detail::PairGraph build_d_graph(const FGMapFamily &f) {
    const PathTable &t = *f.paths;
    detail::PairGraph pg;
    std::map<std::pair<int, int>, int> id;
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b)
            if (a != b && t[a].range == t[b].range) {
                id[{static_cast<int>(a), static_cast<int>(b)}] = static_cast<int>(pg.pairs.size());
                pg.pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
    pg.out.resize(pg.pairs.size());
    for (const auto &x : f.entries)
        pg.out[id.at({x.alpha, x.beta})].push_back({id.at({x.gamma, x.delta}), {x.e, x.g}});
    return pg;
}

} // namespace

DecisionCertificate decide_d(const BlockPermutation &p) {
    FGMapFamily f = fg_maps(p);
    return detail::analyze(build_d_graph(f), *f.paths);
}

bool replay_d(const BlockPermutation &p, const DecisionCertificate &c) {
    if (c.verdict || c.cycle.empty() || c.labels.size() != c.cycle.size())
        return false;
    FGMapFamily f = fg_maps(p);
    const PathTable &t = *f.paths;
    for (std::size_t i = 0; i < c.cycle.size(); ++i) {
        if (c.labels[i].size() != 2)
            return false;
        auto a = t.find(c.cycle[i].first), b = t.find(c.cycle[i].second);
        const PathPair &next = c.cycle[(i + 1) % c.cycle.size()];
        auto hit = std::find_if(f.entries.begin(), f.entries.end(), [&](const FGEntry &x) {
            return a && b && x.e == c.labels[i][0] && x.g == c.labels[i][1] &&
                   x.alpha == static_cast<int>(*a) && x.beta == static_cast<int>(*b);
        });
        if (hit == f.entries.end() || t[hit->gamma] != next.first || t[hit->delta] != next.second)
            return false;
    }
    return true;
}

bool brute_force_d(const BlockPermutation &p, std::size_t max_m) {
    if (max_m == 0)
        throw std::invalid_argument("max_m must be positive");
    FGMapFamily f = fg_maps(p);
    const PathTable &t = *f.paths;
    std::set<std::pair<int, int>> alive;
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b)
            if (a != b)
                alive.emplace(static_cast<int>(a), static_cast<int>(b));
    for (std::size_t m = 1; m <= max_m; ++m) {
        std::set<std::pair<int, int>> next;
        for (const auto &x : f.entries)
            if (alive.count({x.alpha, x.beta}))
                next.emplace(x.gamma, x.delta);
        if (next.empty())
            return true;
        alive = std::move(next);
    }
    return false;
}

std::string to_string(Classification c) {
    switch (c) {
    case Classification::Automorphism:
        return "AUTOMORPHISM";
    case Classification::DiagonalAutomorphismOnly:
        return "DIAGONAL_AUTOMORPHISM_ONLY";
    case Classification::Proper:
        return "PROPER";
    }
    return "PROPER";
}

ClassifyResult classify(const BlockPermutation &p) {
    require_no_sinks(p.graph());
    BlockPermutation r = reduce_level(p);
    DecisionCertificate b = decide_b(r);
    DecisionCertificate d = decide_d(r);
    Classification kind = !b.verdict  ? Classification::Proper
                          : d.verdict ? Classification::Automorphism
                                      : Classification::DiagonalAutomorphismOnly;
    return {kind, std::move(r), std::move(b), std::move(d)};
}

} // namespace gel
