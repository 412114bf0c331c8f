#include "pair_graph.hpp"

#include <algorithm>

namespace gel::detail {

DecisionCertificate analyze(const PairGraph &g, const PathTable &t) {
    DecisionCertificate c;
    const int n = static_cast<int>(g.pairs.size());
    c.nodes = g.pairs.size();
    for (const auto &o : g.out)
        c.arcs += o.size();
    auto as_pair = [&](int v) {
        return PathPair{t[g.pairs[v].first], t[g.pairs[v].second]};
    };

    std::vector<int> color(n, 0), parent(n, -1), parent_arc(n, -1);
    std::vector<int> finish;
    finish.reserve(n);
    for (int root = 0; root < n; ++root) {
        if (color[root])
            continue;
        std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
        color[root] = 1;
        while (!stack.empty()) {
            auto &[v, next] = stack.back();
            if (next == g.out[v].size()) {
                color[v] = 2;
                finish.push_back(v);
                stack.pop_back();
                continue;
            }
            const Arc &a = g.out[v][next];
            int arc_index = static_cast<int>(next);
            ++next;
            if (color[a.to] == 0) {
                color[a.to] = 1;
                parent[a.to] = v;
                parent_arc[a.to] = arc_index;
                stack.emplace_back(a.to, 0);
            } else if (color[a.to] == 1) {
                // back arc v -> a.to closes a cycle along the DFS stack
                std::vector<int> nodes;
                std::vector<std::vector<EdgeId>> labels;
                for (int w = v; w != a.to; w = parent[w]) {
                    nodes.push_back(w);
                    labels.push_back(g.out[parent[w]][parent_arc[w]].label);
                }
                nodes.push_back(a.to);
                std::reverse(nodes.begin(), nodes.end());
                // labels were collected for arcs parent[w] -> w, walking back
                std::reverse(labels.begin(), labels.end());
                labels.push_back(a.label);
                c.verdict = false;
                for (int w : nodes)
                    c.cycle.push_back(as_pair(w));
                c.labels = std::move(labels);
                return c;
            }
        }
    }

    // reverse finishing order is topological
    std::reverse(finish.begin(), finish.end());
    std::vector<std::size_t> longest(n, 0);
    for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
        int v = *it;
        for (const auto &a : g.out[v])
            longest[v] = std::max(longest[v], longest[a.to] + 1);
    }
    std::size_t best = 0;
    for (auto l : longest)
        best = std::max(best, l);
    c.verdict = true;
    c.sync_length = best + 1;
    for (int v : finish)
        c.order.push_back(as_pair(v));
    return c;
}

} // namespace gel::detail
