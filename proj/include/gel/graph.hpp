#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gel {

using VertexId = int;
using EdgeId = int;

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Raised when an operation needs a structural hypothesis the graph lacks
/// (typically: a sink is present).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Edge {
    std::string name;
    VertexId source;
    VertexId range;
};

/// Finite directed multigraph. The source of an edge emits it, the range
/// receives it. Declaration order of vertices and edges is the canonical
/// order used by every downstream enumeration.
class Graph {
  public:
    Graph() = default;
    Graph(std::vector<std::string> vertices, std::vector<Edge> edges);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const std::string &vertex_name(VertexId v) const { return vertices_.at(v); }
    const Edge &edge(EdgeId e) const { return edges_.at(e); }
    const std::vector<std::string> &vertices() const { return vertices_; }
    const std::vector<Edge> &edges() const { return edges_; }

    VertexId source(EdgeId e) const { return edges_[e].source; }
    VertexId range(EdgeId e) const { return edges_[e].range; }

    std::optional<VertexId> find_vertex(std::string_view name) const;
    std::optional<EdgeId> find_edge(std::string_view name) const;
    VertexId vertex_id(std::string_view name) const;

    /// Edges with s(e) = v, in declaration order.
    const std::vector<EdgeId> &emitted(VertexId v) const { return out_[v]; }
    /// Edges with r(e) = v, in declaration order.
    const std::vector<EdgeId> &received(VertexId v) const { return in_[v]; }

    /// True when every edge name is a single character, so path literals may
    /// omit the `.` separator.
    bool single_char_edges() const;

    /// Canonical text serialization (parse_graph round-trips it).
    std::string to_text() const;

  private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::map<std::string, VertexId, std::less<>> vertex_index_;
    std::map<std::string, EdgeId, std::less<>> edge_index_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
};

using GraphPtr = std::shared_ptr<const Graph>;

/// Parses the line-based graph format:
///   # comment
///   vertex NAME
///   edge NAME SRC RNG
Graph parse_graph(std::string_view text);
Graph load_graph(const std::string &file);

/// Edge sequence stored inline up to a typical analysis depth.
using EdgeSeq = boost::container::small_vector<EdgeId, 20>;

/// A path of length k >= 0. Length-0 paths are vertices (source == range).
struct Path {
    VertexId source = 0;
    VertexId range = 0;
    EdgeSeq edges;

    std::size_t length() const { return edges.size(); }
    bool is_vertex() const { return edges.empty(); }

    static Path vertex(VertexId v) { return Path{v, v, {}}; }
    static Path edge(const Graph &g, EdgeId e) {
        return Path{g.source(e), g.range(e), {e}};
    }

    friend bool operator==(const Path &a, const Path &b) {
        return a.edges == b.edges && a.source == b.source;
    }
    friend bool operator<(const Path &a, const Path &b) {
        if (a.edges != b.edges)
            return a.edges < b.edges;
        return a.source < b.source;
    }
    friend bool operator!=(const Path &a, const Path &b) { return !(a == b); }
};

/// Concatenation; throws std::invalid_argument when r(a) != s(b).
Path concat(const Graph &g, const Path &a, const Path &b);
/// First n edges of p (n <= |p|); n = 0 gives the vertex s(p).
Path prefix(const Graph &g, const Path &p, std::size_t n);
/// Last n edges of p; n = 0 gives the vertex r(p).
Path suffix(const Graph &g, const Path &p, std::size_t n);

std::string format_path(const Graph &g, const Path &p);
/// Accepts `a.b.c`, `abc` when all edge names are single characters, a single
/// edge name, or a vertex name (length-0 path).
Path parse_path(const Graph &g, std::string_view literal);

/// All length-k paths in lexicographic order by edge declaration order.
std::vector<Path> paths(const Graph &g, std::size_t k);

/// E^k_{v,w}: paths with range v and source w, in paths() order.
std::vector<Path> block(const Graph &g, VertexId range, VertexId source,
                        std::size_t k);

/// A[v][w] = number of edges emitted by v and received by w.
std::vector<std::vector<long>> adjacency(const Graph &g);

/// Indexed E^k; lookup is a binary search on the lexicographic order.
class PathTable {
  public:
    PathTable(GraphPtr graph, std::size_t level);

    const Graph &graph() const { return *graph_; }
    const GraphPtr &graph_ptr() const { return graph_; }
    std::size_t level() const { return level_; }
    std::size_t size() const { return paths_.size(); }
    const Path &operator[](std::size_t i) const { return paths_[i]; }
    const std::vector<Path> &all() const { return paths_; }

    std::optional<std::size_t> find(const Path &p) const;
    std::size_t index(const Path &p) const;

  private:
    GraphPtr graph_;
    std::size_t level_;
    std::vector<Path> paths_;
};

/// Shared, memoized PathTable; the cache holds weak references only.
std::shared_ptr<const PathTable> path_table(const GraphPtr &graph, std::size_t level);

struct HypothesisCheck {
    std::string name;
    bool satisfied;
    std::string requires_;
};

struct StructuralReport {
    bool no_sinks = false;
    bool no_sources = false;
    bool every_loop_has_exit = false;
    bool strongly_connected = false;
    std::optional<long> period;
    bool indecomposable = false;
    std::vector<HypothesisCheck> hypotheses;

    /// Standing hypothesis of all endomorphism analysis.
    bool endomorphism_ready() const { return no_sinks && every_loop_has_exit; }
};

/// Largest vertex count accepted by the exhaustive indecomposability test.
inline constexpr std::size_t kIndecomposableVertexLimit = 16;

StructuralReport validate(const Graph &g);

/// Throws ValidationError unless the graph has no sinks.
void require_no_sinks(const Graph &g);

/// A graph automorphism: vertex and edge permutations commuting with s and r.
struct GraphAut {
    std::vector<VertexId> vertex_map;
    std::vector<EdgeId> edge_map;

    static GraphAut identity(const Graph &g);
    bool is_identity() const;
    bool fixes_vertices() const;
    Path apply(const Path &p) const;
    GraphAut inverse() const;

    friend bool operator==(const GraphAut &, const GraphAut &) = default;
    friend auto operator<=>(const GraphAut &, const GraphAut &) = default;
};

/// (a * b)(x) = a(b(x)).
GraphAut compose(const GraphAut &a, const GraphAut &b);
bool is_graph_automorphism(const Graph &g, const GraphAut &a);
std::string format_graph_aut(const Graph &g, const GraphAut &a);

/// All automorphisms, identity first, sorted.
std::vector<GraphAut> graph_automorphisms(const Graph &g);

} // namespace gel
