#include "gel/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace gel {

Graph::Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vertex_index_.emplace(vertices_[i], static_cast<VertexId>(i)).second)
            throw std::invalid_argument("duplicate vertex " + vertices_[i]);
    }
    out_.resize(vertices_.size());
    in_.resize(vertices_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge &e = edges_[i];
        if (!edge_index_.emplace(e.name, static_cast<EdgeId>(i)).second)
            throw std::invalid_argument("duplicate edge " + e.name);
        if (e.source < 0 || e.range < 0 ||
            static_cast<std::size_t>(e.source) >= vertices_.size() ||
            static_cast<std::size_t>(e.range) >= vertices_.size())
            throw std::invalid_argument("edge " + e.name + " has a bad endpoint");
        out_[e.source].push_back(static_cast<EdgeId>(i));
        in_[e.range].push_back(static_cast<EdgeId>(i));
    }
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
    auto it = edge_index_.find(name);
    if (it == edge_index_.end())
        return std::nullopt;
    return it->second;
}

VertexId Graph::vertex_id(std::string_view name) const {
    auto v = find_vertex(name);
    if (!v)
        throw std::invalid_argument("unknown vertex " + std::string(name));
    return *v;
}

bool Graph::single_char_edges() const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const Edge &e) { return e.name.size() == 1; });
}

std::string Graph::to_text() const {
    std::ostringstream os;
    for (const auto &v : vertices_)
        os << "vertex " << v << '\n';
    for (const auto &e : edges_)
        os << "edge " << e.name << ' ' << vertices_[e.source] << ' '
           << vertices_[e.range] << '\n';
    return os.str();
}

Graph parse_graph(std::string_view text) {
    std::vector<std::string> vertices;
    std::map<std::string, VertexId, std::less<>> vindex;
    std::set<std::string, std::less<>> enames;
    std::vector<Edge> edges;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        if (tok[0] == "vertex") {
            if (tok.size() != 2)
                throw ParseError(lineno, "expected: vertex NAME");
            if (vindex.count(tok[1]))
                throw ParseError(lineno, "duplicate vertex " + tok[1]);
            vindex.emplace(tok[1], static_cast<VertexId>(vertices.size()));
            vertices.push_back(tok[1]);
        } else if (tok[0] == "edge") {
            if (tok.size() != 4)
                throw ParseError(lineno, "expected: edge NAME SRC RNG");
            if (enames.count(tok[1]))
                throw ParseError(lineno, "duplicate edge " + tok[1]);
            auto s = vindex.find(tok[2]);
            auto r = vindex.find(tok[3]);
            if (s == vindex.end())
                throw ParseError(lineno, "unknown vertex " + tok[2]);
            if (r == vindex.end())
                throw ParseError(lineno, "unknown vertex " + tok[3]);
            enames.insert(tok[1]);
            edges.push_back(Edge{tok[1], s->second, r->second});
        } else {
            throw ParseError(lineno, "unrecognized directive " + tok[0]);
        }
    }
    return Graph(std::move(vertices), std::move(edges));
}

Graph load_graph(const std::string &file) {
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot open " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

Path concat(const Graph &g, const Path &a, const Path &b) {
    (void)g;
    if (a.range != b.source)
        throw std::invalid_argument("paths do not compose");
    Path out{a.source, b.range, a.edges};
    out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
    return out;
}

Path prefix(const Graph &g, const Path &p, std::size_t n) {
    if (n > p.length())
        throw std::out_of_range("prefix longer than path");
    if (n == p.length())
        return p;
    VertexId end = g.source(p.edges[n]);
    return Path{p.source, end, {p.edges.begin(), p.edges.begin() + n}};
}

Path suffix(const Graph &g, const Path &p, std::size_t n) {
    if (n > p.length())
        throw std::out_of_range("suffix longer than path");
    if (n == p.length())
        return p;
    VertexId start = g.range(p.edges[p.length() - n - 1]);
    return Path{start, p.range, {p.edges.end() - n, p.edges.end()}};
}

std::string format_path(const Graph &g, const Path &p) {
    if (p.is_vertex())
        return g.vertex_name(p.source);
    const bool compact = g.single_char_edges();
    std::string out;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        if (i && !compact)
            out += '.';
        out += g.edge(p.edges[i]).name;
    }
    return out;
}

Path parse_path(const Graph &g, std::string_view lit) {
    if (lit.empty())
        throw std::invalid_argument("empty path literal");
    std::vector<std::string> names;
    if (auto e = g.find_edge(lit)) {
        names.emplace_back(lit);
    } else if (auto v = g.find_vertex(lit)) {
        return Path::vertex(*v);
    } else if (lit.find('.') != std::string_view::npos) {
        std::size_t start = 0;
        while (true) {
            auto dot = lit.find('.', start);
            names.emplace_back(lit.substr(start, dot - start));
            if (dot == std::string_view::npos)
                break;
            start = dot + 1;
        }
    } else if (g.single_char_edges()) {
        for (char c : lit)
            names.emplace_back(1, c);
    } else {
        throw std::invalid_argument("unknown path " + std::string(lit));
    }
    Path p;
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto e = g.find_edge(names[i]);
        if (!e)
            throw std::invalid_argument("unknown edge " + names[i] + " in " +
                                        std::string(lit));
        if (i == 0) {
            p.source = g.source(*e);
        } else if (g.source(*e) != p.range) {
            throw std::invalid_argument("not a path: " + std::string(lit));
        }
        p.range = g.range(*e);
        p.edges.push_back(*e);
    }
    return p;
}

std::vector<Path> paths(const Graph &g, std::size_t k) {
    std::vector<Path> cur;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        cur.push_back(Path::vertex(static_cast<VertexId>(v)));
    if (k == 0)
        return cur;
    cur.clear();
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        cur.push_back(Path::edge(g, static_cast<EdgeId>(e)));
    for (std::size_t len = 1; len < k; ++len) {
        std::vector<Path> next;
        for (const auto &p : cur) {
            for (EdgeId e : g.emitted(p.range)) {
                Path q = p;
                q.edges.push_back(e);
                q.range = g.range(e);
                next.push_back(std::move(q));
            }
        }
        cur = std::move(next);
    }
    // extension in emitted order keeps lexicographic order since emitted()
    // lists edges by increasing id
    return cur;
}

std::vector<Path> block(const Graph &g, VertexId range, VertexId source,
                        std::size_t k) {
    if (range < 0 || source < 0 ||
        static_cast<std::size_t>(range) >= g.num_vertices() ||
        static_cast<std::size_t>(source) >= g.num_vertices())
        throw std::invalid_argument("unknown vertex");
    std::vector<Path> out;
    for (auto &p : paths(g, k))
        if (p.range == range && p.source == source)
            out.push_back(std::move(p));
    return out;
}

std::vector<std::vector<long>> adjacency(const Graph &g) {
    std::vector<std::vector<long>> a(g.num_vertices(),
                                     std::vector<long>(g.num_vertices(), 0));
    for (const auto &e : g.edges())
        ++a[e.source][e.range];
    return a;
}

PathTable::PathTable(GraphPtr graph, std::size_t level)
    : graph_(std::move(graph)), level_(level), paths_(paths(*graph_, level)) {}

std::shared_ptr<const PathTable> path_table(const GraphPtr &graph, std::size_t level) {
    static std::mutex lock;
    // a live table pins its graph, so the address key cannot be reused while it is live
    static std::map<std::pair<const Graph *, std::size_t>, std::weak_ptr<const PathTable>> cache;
    std::lock_guard guard(lock);
    auto &slot = cache[{graph.get(), level}];
    if (auto t = slot.lock())
        return t;
    auto t = std::make_shared<const PathTable>(graph, level);
    slot = t;
    return t;
}

std::optional<std::size_t> PathTable::find(const Path &p) const {
    auto it = std::lower_bound(paths_.begin(), paths_.end(), p);
    if (it == paths_.end() || *it != p)
        return std::nullopt;
    return static_cast<std::size_t>(it - paths_.begin());
}

std::size_t PathTable::index(const Path &p) const {
    auto i = find(p);
    if (!i)
        throw std::invalid_argument("path not at this level");
    return *i;
}

namespace {

// Tarjan, iterative enough for desk-scale graphs.
struct Scc {
    std::vector<int> comp;
    int count = 0;
};

Scc strongly_connected_components(const Graph &g) {
    const int n = static_cast<int>(g.num_vertices());
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<bool> on(n, false);
    Scc out;
    out.comp.assign(n, -1);
    int counter = 0;
    std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = true;
        for (EdgeId e : g.emitted(v)) {
            int w = g.range(e);
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            while (true) {
                int w = stack.back();
                stack.pop_back();
                on[w] = false;
                out.comp[w] = out.count;
                if (w == v)
                    break;
            }
            ++out.count;
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[v] < 0)
            visit(v);
    return out;
}

bool hereditary(const Graph &g, std::uint32_t set) {
    for (const auto &e : g.edges())
        if ((set >> e.source & 1u) && !(set >> e.range & 1u))
            return false;
    return true;
}

bool saturated(const Graph &g, std::uint32_t set) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (set >> v & 1u)
            continue;
        const auto &out = g.emitted(static_cast<VertexId>(v));
        if (out.empty())
            continue;
        bool all_in = std::all_of(out.begin(), out.end(), [&](EdgeId e) {
            return (set >> g.range(e) & 1u) != 0;
        });
        if (all_in)
            return false;
    }
    return true;
}

} // namespace

StructuralReport validate(const Graph &g) {
    StructuralReport r;
    const std::size_t n = g.num_vertices();

    r.no_sinks = n > 0;
    r.no_sources = n > 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (g.emitted(static_cast<VertexId>(v)).empty())
            r.no_sinks = false;
        if (g.received(static_cast<VertexId>(v)).empty())
            r.no_sources = false;
    }

    // A loop without exit lives entirely on out-degree-1 vertices.
    r.every_loop_has_exit = true;
    {
        std::vector<int> state(n, 0); // 0 new, 1 on walk, 2 done
        for (std::size_t start = 0; start < n && r.every_loop_has_exit; ++start) {
            std::vector<std::size_t> walk;
            std::size_t v = start;
            while (true) {
                if (g.emitted(static_cast<VertexId>(v)).size() != 1 || state[v] == 2)
                    break;
                if (state[v] == 1) {
                    r.every_loop_has_exit = false;
                    break;
                }
                state[v] = 1;
                walk.push_back(v);
                v = static_cast<std::size_t>(g.range(g.emitted(static_cast<VertexId>(v))[0]));
            }
            for (auto w : walk)
                state[w] = 2;
        }
    }

    Scc scc = strongly_connected_components(g);
    r.strongly_connected = n > 0 && scc.count == 1;

    long period = 0;
    for (int c = 0; c < scc.count; ++c) {
        int root = -1;
        for (std::size_t v = 0; v < n; ++v)
            if (scc.comp[v] == c) {
                root = static_cast<int>(v);
                break;
            }
        std::vector<long> level(n, -1);
        std::queue<int> q;
        level[root] = 0;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (EdgeId e : g.emitted(v)) {
                int w = g.range(e);
                if (scc.comp[w] == c && level[w] < 0) {
                    level[w] = level[v] + 1;
                    q.push(w);
                }
            }
        }
        for (const auto &e : g.edges()) {
            if (scc.comp[e.source] != c || scc.comp[e.range] != c)
                continue;
            long d = level[e.source] + 1 - level[e.range];
            period = std::gcd(period, d < 0 ? -d : d);
        }
    }
    bool has_cycle = false;
    for (const auto &e : g.edges())
        if (scc.comp[e.source] == scc.comp[e.range])
            has_cycle = true;
    if (has_cycle)
        r.period = period;

    if (n == 0) {
        r.indecomposable = false;
    } else if (n <= kIndecomposableVertexLimit) {
        // Intersections of hereditary saturated sets are hereditary saturated,
        // so two disjoint nonempty ones exist iff there are two distinct
        // minimal nonempty ones.
        std::vector<std::uint32_t> hs;
        for (std::uint32_t s = 1; s < (1u << n); ++s)
            if (hereditary(g, s) && saturated(g, s))
                hs.push_back(s);
        std::size_t minimal = 0;
        for (auto s : hs) {
            bool is_min = std::none_of(hs.begin(), hs.end(), [s](std::uint32_t t) {
                return t != s && (t & s) == t;
            });
            if (is_min)
                ++minimal;
        }
        r.indecomposable = minimal <= 1;
    }

    r.hypotheses = {
        {"endomorphism analysis", r.no_sinks && r.every_loop_has_exit,
         "no sinks, every loop has an exit"},
        {"diagonal is maximal abelian", r.every_loop_has_exit,
         "every loop has an exit"},
        {"outerness evidence", r.no_sources && r.every_loop_has_exit,
         "no sources, every loop has an exit"},
        {"restricted Weyl group structure",
         r.strongly_connected && r.period == 1,
         "strongly connected, period 1"},
        {"simple algebra", r.indecomposable && r.every_loop_has_exit,
         "indecomposable, every loop has an exit"},
    };
    return r;
}

void require_no_sinks(const Graph &g) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (g.emitted(static_cast<VertexId>(v)).empty())
            throw ValidationError("vertex " + g.vertex_name(static_cast<VertexId>(v)) +
                                  " is a sink");
    if (g.num_vertices() == 0)
        throw ValidationError("graph has no vertices");
}

GraphAut GraphAut::identity(const Graph &g) {
    GraphAut a;
    a.vertex_map.resize(g.num_vertices());
    a.edge_map.resize(g.num_edges());
    std::iota(a.vertex_map.begin(), a.vertex_map.end(), 0);
    std::iota(a.edge_map.begin(), a.edge_map.end(), 0);
    return a;
}

bool GraphAut::is_identity() const {
    for (std::size_t i = 0; i < vertex_map.size(); ++i)
        if (vertex_map[i] != static_cast<VertexId>(i))
            return false;
    for (std::size_t i = 0; i < edge_map.size(); ++i)
        if (edge_map[i] != static_cast<EdgeId>(i))
            return false;
    return true;
}

bool GraphAut::fixes_vertices() const {
    for (std::size_t i = 0; i < vertex_map.size(); ++i)
        if (vertex_map[i] != static_cast<VertexId>(i))
            return false;
    return true;
}

Path GraphAut::apply(const Path &p) const {
    Path q{vertex_map[p.source], vertex_map[p.range], p.edges};
    for (auto &e : q.edges)
        e = edge_map[e];
    return q;
}

GraphAut GraphAut::inverse() const {
    GraphAut b;
    b.vertex_map.resize(vertex_map.size());
    b.edge_map.resize(edge_map.size());
    for (std::size_t i = 0; i < vertex_map.size(); ++i)
        b.vertex_map[vertex_map[i]] = static_cast<VertexId>(i);
    for (std::size_t i = 0; i < edge_map.size(); ++i)
        b.edge_map[edge_map[i]] = static_cast<EdgeId>(i);
    return b;
}

GraphAut compose(const GraphAut &a, const GraphAut &b) {
    GraphAut c;
    c.vertex_map.resize(b.vertex_map.size());
    c.edge_map.resize(b.edge_map.size());
    for (std::size_t i = 0; i < b.vertex_map.size(); ++i)
        c.vertex_map[i] = a.vertex_map[b.vertex_map[i]];
    for (std::size_t i = 0; i < b.edge_map.size(); ++i)
        c.edge_map[i] = a.edge_map[b.edge_map[i]];
    return c;
}

bool is_graph_automorphism(const Graph &g, const GraphAut &a) {
    if (a.vertex_map.size() != g.num_vertices() || a.edge_map.size() != g.num_edges())
        return false;
    std::vector<bool> vseen(g.num_vertices()), eseen(g.num_edges());
    for (auto v : a.vertex_map) {
        if (v < 0 || static_cast<std::size_t>(v) >= vseen.size() || vseen[v])
            return false;
        vseen[v] = true;
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        EdgeId f = a.edge_map[e];
        if (f < 0 || static_cast<std::size_t>(f) >= eseen.size() || eseen[f])
            return false;
        eseen[f] = true;
        if (g.source(f) != a.vertex_map[g.source(static_cast<EdgeId>(e))] ||
            g.range(f) != a.vertex_map[g.range(static_cast<EdgeId>(e))])
            return false;
    }
    return true;
}

std::string format_graph_aut(const Graph &g, const GraphAut &a) {
    if (a.is_identity())
        return "id";
    std::string out;
    auto cycles = [&](const auto &map, auto name) {
        std::vector<bool> seen(map.size(), false);
        for (std::size_t i = 0; i < map.size(); ++i) {
            if (seen[i] || map[i] == static_cast<int>(i))
                continue;
            out += '(';
            std::size_t j = i;
            bool first = true;
            while (!seen[j]) {
                seen[j] = true;
                if (!first)
                    out += ' ';
                first = false;
                out += name(j);
                j = static_cast<std::size_t>(map[j]);
            }
            out += ')';
        }
    };
    cycles(a.vertex_map, [&](std::size_t v) { return g.vertex_name(static_cast<VertexId>(v)); });
    cycles(a.edge_map, [&](std::size_t e) { return g.edge(static_cast<EdgeId>(e)).name; });
    return out;
}

std::vector<GraphAut> graph_automorphisms(const Graph &g) {
    const std::size_t n = g.num_vertices();
    // parallel classes: edges from v to w in declaration order
    std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> cls;
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        cls[{g.source(static_cast<EdgeId>(e)), g.range(static_cast<EdgeId>(e))}]
            .push_back(static_cast<EdgeId>(e));

    std::vector<GraphAut> out;
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (const auto &[key, edges] : cls) {
            auto it = cls.find({perm[key.first], perm[key.second]});
            if (it == cls.end() || it->second.size() != edges.size()) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;

        std::vector<std::pair<const std::vector<EdgeId> *, std::vector<EdgeId>>> slots;
        for (const auto &[key, edges] : cls) {
            const auto &target = cls.at({perm[key.first], perm[key.second]});
            slots.emplace_back(&edges, target);
        }
        // odometer over the per-class bijections
        std::function<void(std::size_t, GraphAut &)> rec = [&](std::size_t i,
                                                               GraphAut &cur) {
            if (i == slots.size()) {
                out.push_back(cur);
                return;
            }
            auto target = slots[i].second;
            std::sort(target.begin(), target.end());
            do {
                const auto &src = *slots[i].first;
                for (std::size_t j = 0; j < src.size(); ++j)
                    cur.edge_map[src[j]] = target[j];
                rec(i + 1, cur);
            } while (std::next_permutation(target.begin(), target.end()));
        };
        GraphAut cur;
        cur.vertex_map = perm;
        cur.edge_map.assign(g.num_edges(), -1);
        rec(0, cur);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace gel
