#include "gel/cond_b.hpp"

#include "pair_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace gel {

std::vector<std::pair<Path, Path>> FMapFamily::table(EdgeId e) const {
    std::vector<std::pair<Path, Path>> out;
    for (std::size_t a = 0; a < paths->size(); ++a)
        if (map[e][a] >= 0)
            out.emplace_back((*paths)[a], (*paths)[map[e][a]]);
    return out;
}

FMapFamily f_maps(const BlockPermutation &p) {
    const Graph &g = p.graph();
    const std::size_t k = p.level();
    FMapFamily f;
    f.paths = std::make_shared<const PathTable>(p.graph_ptr(), k - 1);
    f.map.assign(g.num_edges(), std::vector<int>(f.paths->size(), -1));
    f.last.assign(g.num_edges(), std::vector<EdgeId>(f.paths->size(), -1));
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
        for (std::size_t a = 0; a < f.paths->size(); ++a) {
            const Path &alpha = (*f.paths)[a];
            if (alpha.source != g.range(e))
                continue;
            Path ea = concat(g, Path::edge(g, e), alpha);
            const Path &img = p.apply(ea);
            f.map[e][a] = static_cast<int>(f.paths->index(prefix(g, img, k - 1)));
            f.last[e][a] = img.edges.back();
        }
    }
    return f;
}

DecisionCertificate decide_b(const BlockPermutation &p) {
    const Graph &g = p.graph();
    FMapFamily f = f_maps(p);
    const PathTable &t = *f.paths;
    detail::PairGraph pg;
    std::map<std::pair<int, int>, int> id;
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b)
            if (a != b && t[a].source == t[b].source) {
                id[{static_cast<int>(a), static_cast<int>(b)}] = static_cast<int>(pg.pairs.size());
                pg.pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
    pg.out.resize(pg.pairs.size());
    for (std::size_t v = 0; v < pg.pairs.size(); ++v) {
        auto [a, b] = pg.pairs[v];
        for (EdgeId e : g.received(t[a].source)) {
            int fa = f.map[e][a], fb = f.map[e][b];
            if (fa != fb)
                pg.out[v].push_back({id.at({fa, fb}), {e}});
        }
        std::sort(pg.out[v].begin(), pg.out[v].end(),
                  [](const detail::Arc &x, const detail::Arc &y) { return x.label < y.label; });
    }
    return detail::analyze(pg, t);
}

bool replay_b(const BlockPermutation &p, const DecisionCertificate &c) {
    if (c.verdict || c.cycle.empty() || c.labels.size() != c.cycle.size())
        return false;
    FMapFamily f = f_maps(p);
    const PathTable &t = *f.paths;
    for (std::size_t i = 0; i < c.cycle.size(); ++i) {
        if (c.labels[i].size() != 1)
            return false;
        EdgeId e = c.labels[i][0];
        auto a = t.find(c.cycle[i].first), b = t.find(c.cycle[i].second);
        if (!a || !b || *a == *b)
            return false;
        int fa = f.map[e][*a], fb = f.map[e][*b];
        if (fa < 0 || fb < 0)
            return false;
        const PathPair &next = c.cycle[(i + 1) % c.cycle.size()];
        if (t[fa] != next.first || t[fb] != next.second)
            return false;
    }
    return true;
}

bool brute_force_b(const BlockPermutation &p, std::size_t max_m) {
    if (max_m == 0)
        throw std::invalid_argument("max_m must be positive");
    FMapFamily f = f_maps(p);
    const std::size_t ne = f.map.size();

    // image of S under f_e, restricted to the domain of f_e
    auto step = [&](const std::vector<int> &s, std::size_t e) {
        std::set<int> out;
        for (int a : s)
            if (f.map[e][a] >= 0)
                out.insert(f.map[e][a]);
        return std::vector<int>(out.begin(), out.end());
    };

    // spread(S, r): some word of r further maps leaves >= 2 images
    std::map<std::pair<std::vector<int>, std::size_t>, bool> memo;
    std::function<bool(const std::vector<int> &, std::size_t)> spread =
        [&](const std::vector<int> &s, std::size_t r) -> bool {
        if (s.size() <= 1)
            return false;
        if (r == 0)
            return true;
        auto key = std::make_pair(s, r);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        bool res = false;
        for (std::size_t e = 0; e < ne && !res; ++e) {
            auto next = step(s, e);
            if (!next.empty())
                res = spread(next, r - 1);
        }
        memo[key] = res;
        return res;
    };

    for (std::size_t m = 1; m <= max_m; ++m) {
        bool bad = false;
        for (std::size_t e = 0; e < ne && !bad; ++e) {
            std::vector<int> dom;
            for (std::size_t a = 0; a < f.paths->size(); ++a)
                if (f.map[e][a] >= 0)
                    dom.push_back(static_cast<int>(a));
            bad = spread(step(dom, e), m - 1);
        }
        if (!bad)
            return true;
    }
    return false;
}

std::optional<Path> rooted_tree_root(const FMapFamily &f, EdgeId e) {
    const Graph &g = f.graph();
    if (g.source(e) != g.range(e))
        return std::nullopt;
    const auto &m = f.map[e];
    std::vector<int> dom;
    for (std::size_t a = 0; a < m.size(); ++a)
        if (m[a] >= 0)
            dom.push_back(static_cast<int>(a));
    int root = -1;
    for (int a : dom)
        if (m[a] == a) {
            if (root >= 0)
                return std::nullopt;
            root = a;
        }
    if (root < 0)
        return std::nullopt;
    for (int a : dom) {
        int x = a;
        for (std::size_t s = 0; s < dom.size() && x != root; ++s)
            x = m[x];
        if (x != root)
            return std::nullopt;
    }
    return (*f.paths)[root];
}

std::string export_diagram(const BlockPermutation &p, const std::string &graph_name) {
    const Graph &g = p.graph();
    FMapFamily f = f_maps(p);
    const PathTable &t = *f.paths;
    std::set<std::size_t> roots;
    std::vector<std::string> root_of(g.num_edges());
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e)
        if (auto r = rooted_tree_root(f, e)) {
            roots.insert(t.index(*r));
            root_of[e] = format_path(g, *r);
        }

    std::ostringstream os;
    auto quote = [](const std::string &s) { return "\"" + s + "\""; };
    os << "digraph fmaps {\n";
    os << "  label=" << quote(graph_name + " level " + std::to_string(p.level()) + " " + p.cycles())
       << ";\n";
    os << "  node [shape=box];\n";
    for (std::size_t a = 0; a < t.size(); ++a) {
        std::string name = format_path(g, t[a]);
        os << "  " << quote(name) << " [label=" << quote(name + (roots.count(a) ? " *" : ""));
        if (roots.count(a))
            os << ", root=true, peripheries=2";
        os << "];\n";
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
        std::string label = "f_" + g.edge(e).name;
        if (!root_of[e].empty())
            os << "  // " << label << " is a rooted tree with root " << root_of[e] << "\n";
        for (const auto &[a, b] : f.table(e))
            os << "  " << quote(format_path(g, a)) << " -> " << quote(format_path(g, b))
               << " [label=" << quote(label) << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string diagram_filename(const std::string &graph_name, const BlockPermutation &p) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(p.digest()));
    return graph_name + "_" + std::to_string(p.level()) + "_" + std::string(hash, 8) + "_fmaps.dot";
}

} // namespace gel
