// gel: command-line front end for permutative endomorphisms of graph algebras.

#include "gel/cond_b.hpp"
#include "gel/cond_d.hpp"
#include "gel/ktheory.hpp"
#include "gel/localized.hpp"
#include "gel/report.hpp"
#include "gel/weyl.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace gel;
using nlohmann::ordered_json;

namespace {

enum ExitCode : int { kOk = 0, kFailure = 1, kValidation = 2, kParse = 3, kCap = 4 };

struct Loaded {
    GraphPtr graph;
    std::string name; // file stem, used in report and diagram names
};

Loaded load(const std::string &file) {
    return {std::make_shared<const Graph>(load_graph(file)), fs::path(file).stem().string()};
}

// Level of a cycle literal from its first path; "()" and "id" fall back to -k.
std::size_t perm_level(const Graph &g, const std::string &perm, std::size_t k) {
    auto open = perm.find('(');
    if (open != std::string::npos) {
        auto end = perm.find_first_of(" )", open + 1);
        std::string first = perm.substr(open + 1, end - open - 1);
        if (!first.empty())
            return parse_path(g, first).length();
    }
    if (k > 0)
        return k;
    throw std::invalid_argument("cannot infer the level of '" + perm + "'; pass -k");
}

BlockPermutation load_perm(const GraphPtr &g, const std::string &perm, std::size_t k) {
    std::string text = perm == "id" ? "()" : perm;
    return parse_cycles(g, perm_level(*g, perm, k), text);
}

// Products of S_mu and S_mu* separated by '.', or one bare path literal with
// an optional trailing '*'.
Element parse_word(const StarAlgebra &alg, const std::string &text) {
    const Graph &g = alg.graph();
    std::vector<std::string> factors;
    if (text.rfind("S_", 0) == 0) {
        std::size_t start = 0;
        for (std::size_t pos; (pos = text.find(".S_", start)) != std::string::npos; start = pos + 1)
            factors.push_back(text.substr(start, pos - start));
        factors.push_back(text.substr(start));
    } else {
        factors.push_back(text);
    }
    Element acc = alg.one();
    for (auto f : factors) {
        if (f.rfind("S_", 0) == 0)
            f = f.substr(2);
        bool star = !f.empty() && f.back() == '*';
        if (star)
            f.pop_back();
        Path mu = parse_path(g, f);
        Element s = alg.word(mu, Path::vertex(mu.range));
        acc = alg.multiply(acc, star ? alg.adjoint(s) : s);
    }
    return alg.reduce(acc);
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

void write_json(const std::string &path, const ordered_json &j) {
    write_file(path, j.dump(2) + "\n");
}

void write_diagram(const std::string &dir, const std::string &name, const BlockPermutation &p) {
    fs::create_directories(dir);
    write_file((fs::path(dir) / diagram_filename(name, p)).string(), export_diagram(p, name));
}

const char *mark(bool b) { return b ? "yes" : "no"; }

GraphAut aut_at(const Graph &g, int index) {
    auto autos = graph_automorphisms(g);
    if (index < 0 || static_cast<std::size_t>(index) >= autos.size())
        throw std::invalid_argument("automorphism index out of range (0.." +
                                    std::to_string(autos.size() - 1) + ")");
    return autos[index];
}

struct Options {
    std::string graph;
    std::size_t level = 0;
    std::vector<std::string> perms;
    std::string word;
    std::string json;
    std::string dot;
    std::string unitary_file;
    std::vector<std::string> block;
    std::vector<int> auts;
    std::uint64_t cap = kDefaultEnumerationCap;
    std::size_t order_cap = 64;
    std::size_t inner_level = 3;
    std::size_t depth = 4;
    std::size_t limit = 50;
    std::size_t stabilize_cap = 0;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string format = "table";
};

int cmd_validate(const Options &o) {
    auto [g, name] = load(o.graph);
    StructuralReport r = validate(*g);
    std::cout << name << ": " << g->num_vertices() << " vertices, " << g->num_edges()
              << " edges\n"
              << "  no sinks             " << mark(r.no_sinks) << "\n"
              << "  no sources           " << mark(r.no_sources) << "\n"
              << "  every loop has exit  " << mark(r.every_loop_has_exit) << "\n"
              << "  strongly connected   " << mark(r.strongly_connected) << "\n"
              << "  period               " << (r.period ? std::to_string(*r.period) : "undefined")
              << "\n"
              << "  indecomposable       " << mark(r.indecomposable) << "\n";
    for (const auto &h : r.hypotheses)
        std::cout << "  [" << (h.satisfied ? "ok" : "--") << "] " << h.name << " (needs "
                  << h.requires_ << ")\n";
    if (!o.json.empty()) {
        ordered_json j;
        j["graph"] = {{"name", name}, {"digest", graph_digest(*g)}};
        j["no_sinks"] = r.no_sinks;
        j["no_sources"] = r.no_sources;
        j["every_loop_has_exit"] = r.every_loop_has_exit;
        j["strongly_connected"] = r.strongly_connected;
        j["period"] = r.period ? ordered_json(*r.period) : ordered_json(nullptr);
        j["indecomposable"] = r.indecomposable;
        for (const auto &h : r.hypotheses)
            j["hypotheses"].push_back(
                {{"name", h.name}, {"satisfied", h.satisfied}, {"requires", h.requires_}});
        write_json(o.json, j);
    }
    return r.endomorphism_ready() ? kOk : kValidation;
}

int cmd_paths(const Options &o) {
    auto [g, name] = load(o.graph);
    std::vector<Path> ps;
    if (o.block.empty())
        ps = paths(*g, o.level);
    else
        ps = block(*g, g->vertex_id(o.block[0]), g->vertex_id(o.block[1]), o.level);
    for (const auto &p : ps)
        std::cout << format_path(*g, p) << "\n";
    std::cout << ps.size() << " paths\n";
    return kOk;
}

int cmd_enumerate(const Options &o) {
    auto [g, name] = load(o.graph);
    require_no_sinks(*g);
    Enumeration en(g, o.level);
    std::cout << en.count_string() << " unitaries at level " << o.level << "\n";
    en.require_within(o.cap);
    const std::uint64_t n = *en.count();
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(n, o.limit); ++i)
        std::cout << i << "  " << en.nth(i).cycles() << "\n";
    if (n > o.limit)
        std::cout << "... " << n - o.limit << " more (raise --limit)\n";
    return kOk;
}

SweepOptions sweep_options(const Options &o) {
    SweepOptions s;
    s.level = o.level;
    s.enumeration_cap = o.cap;
    s.order_cap = o.order_cap;
    s.inner_level = o.inner_level;
    s.property_depth = o.depth;
    s.workers = o.workers;
    return s;
}

int cmd_classify(const Options &o) {
    auto [g, name] = load(o.graph);
    ClassificationReport r = run_sweep(g, name, sweep_options(o));
    if (o.format == "json")
        std::cout << to_json(r).dump(2) << "\n";
    else
        std::cout << render_table(r);
    if (!o.json.empty())
        write_json(o.json, to_json(r));
    if (!o.dot.empty() && !r.refusal) {
        Enumeration en(g, o.level);
        for (std::uint64_t i = 0; i < *en.count(); ++i)
            write_diagram(o.dot, name, en.nth(i));
    }
    return r.refusal ? kCap : kOk;
}

int cmd_check(const Options &o) {
    auto [g, name] = load(o.graph);
    require_no_sinks(*g);
    BlockPermutation p = load_perm(g, o.perms.at(0), o.level);
    UnitaryRecord r = analyze_unitary(p, 0, sweep_options(o));
    std::cout << render_record(r);
    if (!o.json.empty())
        write_json(o.json, to_json(r));
    if (!o.dot.empty())
        write_diagram(o.dot, name, p);
    return kOk;
}

int cmd_invert(const Options &o) {
    auto [g, name] = load(o.graph);
    require_no_sinks(*g);
    BlockPermutation p = load_perm(g, o.perms.at(0), o.level);
    InverseSearch s = try_invert(p, o.stabilize_cap ? std::optional(o.stabilize_cap) : std::nullopt);
    if (!s.inverse) {
        std::cout << "not invertible: no stable inverse within " << s.cap
                  << " iterations (proper endomorphism)\n";
        return kOk;
    }
    std::cout << s.inverse->cycles() << " at level " << s.inverse->level() << " ("
              << s.iterations << " iterations)\n";
    return kOk;
}

int cmd_order(const Options &o) {
    auto [g, name] = load(o.graph);
    require_no_sinks(*g);
    BlockPermutation p = load_perm(g, o.perms.at(0), o.level);
    OrderResult r = order_up_to(p, o.order_cap);
    if (r.order)
        std::cout << "order " << *r.order << "\n";
    else
        std::cout << r.note << "\n";
    return kOk;
}

int cmd_apply(const Options &o) {
    auto [g, name] = load(o.graph);
    StarAlgebra alg(g);
    BlockPermutation p = load_perm(g, o.perms.at(0), o.level);
    Element x = parse_word(alg, o.word);
    GraphAut a = o.auts.empty() ? GraphAut::identity(*g) : aut_at(*g, o.auts[0]);
    Element y = alg.reduce(CompositeAut{p, a}.apply(alg, x));
    std::cout << alg.format(y) << "\n";
    return kOk;
}

int cmd_compose(const Options &o) {
    auto [g, name] = load(o.graph);
    require_no_sinks(*g);
    if (o.perms.size() != 2)
        throw std::invalid_argument("compose needs exactly two --perm values");
    BlockPermutation p = load_perm(g, o.perms[0], o.level);
    BlockPermutation q = load_perm(g, o.perms[1], o.level);
    if (o.auts.empty()) {
        BlockPermutation r = star_compose(p, q);
        BlockPermutation red = reduce_level(r);
        std::cout << r.cycles() << " at level " << r.level() << "\n"
                  << "reduced: " << red.cycles() << " at level " << red.level() << "\n";
        return kOk;
    }
    if (o.auts.size() != 2)
        throw std::invalid_argument("compose needs zero or two --aut values");
    CompositeAut x = CompositeAut::make(p, aut_at(*g, o.auts[0]));
    CompositeAut y = CompositeAut::make(q, aut_at(*g, o.auts[1]));
    std::cout << compose(x, y).str() << "\n";
    return kOk;
}

int cmd_autos(const Options &o) {
    auto [g, name] = load(o.graph);
    auto autos = graph_automorphisms(*g);
    std::cout << autos.size() << " graph automorphism(s)\n";
    for (std::size_t i = 0; i < autos.size(); ++i)
        std::cout << "  " << i << "  " << format_graph_aut(*g, autos[i]) << "\n";
    if (o.perms.empty())
        return kOk;

    require_no_sinks(*g);
    BlockPermutation p = load_perm(g, o.perms[0], o.level);
    std::cout << "conjugates of " << p.cycles() << ":\n";
    for (std::size_t i = 0; i < autos.size(); ++i)
        std::cout << "  " << i << "  " << reduce_level(conjugate(autos[i], p)).cycles() << "\n";
    if (classify(p).kind != Classification::Automorphism) {
        std::cout << p.cycles() << " is not an automorphism\n";
        return kOk;
    }
    InnerSearch s = inner_test(p, o.inner_level, o.cap);
    if (s.witness)
        std::cout << "inner: Ad(w) with w = " << s.witness->cycles() << " at level "
                  << s.witness->level() << "\n";
    else
        std::cout << "not inner by any w up to level " << s.max_level << " (" << s.candidates
                  << " candidates)\n";
    PropertyPCertificate c = property_p_certificate(p, o.depth);
    std::cout << "property (P): "
              << (c.m ? "m = " + std::to_string(*c.m) : std::string("no m <= level")) << " ("
              << c.checked << " projections, depth " << o.depth << ")\n";
    return kOk;
}

int cmd_ktheory(const Options &o) {
    auto [g, name] = load(o.graph);
    KGroups k = k_groups(*g);
    std::string factors;
    for (const auto &d : k.snf.factors)
        factors += (factors.empty() ? "" : ", ") + d.get_str();
    std::cout << "K0 = " << k.k0.str() << "\nK1 = " << k.k1.str() << "\n"
              << "invariant factors of I - A^t: (" << factors << ")\n";
    if (!o.json.empty()) {
        auto group = [](const AbelianGroup &a) {
            ordered_json t = ordered_json::array();
            for (const auto &x : a.torsion)
                t.push_back(x.get_str());
            return ordered_json{{"group", a.str()}, {"free_rank", a.free_rank}, {"torsion", t}};
        };
        ordered_json j;
        j["graph"] = {{"name", name}, {"digest", graph_digest(*g)}};
        j["K0"] = group(k.k0);
        j["K1"] = group(k.k1);
        ordered_json f = ordered_json::array();
        for (const auto &d : k.snf.factors)
            f.push_back(d.get_str());
        j["invariant_factors"] = f;
        write_json(o.json, j);
    }
    return kOk;
}

int cmd_localized(const Options &o) {
    auto [g, name] = load(o.graph);
    StarAlgebra alg(g);
    LocalizedUnitary lu(alg, load_localized(alg, o.unitary_file));
    auto dims = [](const std::vector<std::size_t> &d) {
        std::string s;
        for (auto x : d)
            s += (s.empty() ? "" : " -> ") + std::to_string(x);
        return s;
    };
    ChainResult xi = lu.xi();
    NilpotencyResult ring = lu.ring_nilpotent();
    std::cout << "level " << lu.level() << ", core dimension " << lu.basis().size() << "\n"
              << "xi chain: " << dims(xi.dims) << ", stable part "
              << (xi.verdict ? "inside" : "not inside") << " the vertex span\n"
              << "ring A_u: " << (ring.nilpotent ? "nilpotent" : "not nilpotent")
              << " on the quotient (" << dims(ring.dims) << ")\n";
    if (lu.normalizes_diagonal()) {
        ChainResult d = lu.xi_d();
        std::cout << "diagonal chain: " << dims(d.dims) << ", restriction to the diagonal "
                  << (d.verdict ? "is" : "is not") << " an automorphism\n";
    } else {
        std::cout << "u does not normalize the diagonal\n";
    }
    StabilizeResult s =
        lu.stabilize_inverse(o.stabilize_cap ? std::optional(o.stabilize_cap) : std::nullopt);
    if (s.inverse)
        std::cout << "invertible (localized inverse found after " << s.iterations
                  << " iterations): " << alg.format(*s.inverse) << "\n";
    else
        std::cout << "no localized inverse within " << s.cap << " iterations\n";
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Permutative endomorphisms of graph C*-algebras"};
    app.require_subcommand(1);
    Options o;

    auto graph_arg = [&](CLI::App *c) {
        c->add_option("graph", o.graph, "graph file")->required()->check(CLI::ExistingFile);
    };
    auto level_opt = [&](CLI::App *c, bool required) {
        auto *opt = c->add_option("-k,--level", o.level, "path level k");
        if (required)
            opt->required()->check(CLI::Range(std::size_t{0}, std::size_t{64}));
    };
    auto perm_opt = [&](CLI::App *c, bool many) {
        auto *opt = c->add_option("--perm", o.perms, "permutation in cycle notation")->required();
        if (!many)
            opt->expected(1);
    };
    auto caps = [&](CLI::App *c) {
        c->add_option("--cap", o.cap, "enumeration cap")->capture_default_str();
        c->add_option("--order-cap", o.order_cap, "largest order tried")->capture_default_str();
        c->add_option("--inner-level", o.inner_level, "deepest level of the inner search")
            ->capture_default_str();
        c->add_option("--depth", o.depth, "property (P) test depth")->capture_default_str();
    };

    std::map<CLI::App *, std::function<int(const Options &)>> run;
    auto sub = [&](const char *name, const char *help, auto fn) {
        CLI::App *c = app.add_subcommand(name, help);
        graph_arg(c);
        run[c] = fn;
        return c;
    };

    auto *validate_cmd = sub("validate", "structural hypotheses of a graph", cmd_validate);
    validate_cmd->add_option("--json", o.json, "write the structural report");

    auto *paths_cmd = sub("paths", "list E^k or one block E^k_{v,w}", cmd_paths);
    level_opt(paths_cmd, true);
    paths_cmd->add_option("--block", o.block, "range and source vertex")->expected(2);

    auto *enum_cmd = sub("enumerate", "list block permutations of E^k", cmd_enumerate);
    level_opt(enum_cmd, true);
    enum_cmd->add_option("--limit", o.limit, "lines to print")->capture_default_str();
    enum_cmd->add_option("--cap", o.cap, "enumeration cap")->capture_default_str();

    auto *classify_cmd = sub("classify", "classify every permutative unitary of level k",
                             cmd_classify);
    level_opt(classify_cmd, true);
    caps(classify_cmd);
    classify_cmd->add_option("--json", o.json, "write the report");
    classify_cmd->add_option("--dot", o.dot, "write f-map diagrams into this directory");
    classify_cmd->add_option("--workers", o.workers, "worker threads");
    classify_cmd->add_option("--format", o.format, "stdout format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();

    auto *check_cmd = sub("check", "full analysis of one unitary", cmd_check);
    level_opt(check_cmd, false);
    perm_opt(check_cmd, false);
    caps(check_cmd);
    check_cmd->add_option("--json", o.json, "write the record");
    check_cmd->add_option("--dot", o.dot, "write the f-map diagram into this directory");

    auto *invert_cmd = sub("invert", "inverse of a permutative automorphism", cmd_invert);
    level_opt(invert_cmd, false);
    perm_opt(invert_cmd, false);
    invert_cmd->add_option("--iterations", o.stabilize_cap, "stabilization cap");

    auto *order_cmd = sub("order", "order of lambda_u", cmd_order);
    level_opt(order_cmd, false);
    perm_opt(order_cmd, false);
    order_cmd->add_option("--cap", o.order_cap, "largest order tried")->capture_default_str();

    auto *apply_cmd = sub("apply", "image of a word under lambda_u (after a graph automorphism)",
                          cmd_apply);
    level_opt(apply_cmd, false);
    perm_opt(apply_cmd, false);
    apply_cmd->add_option("--word", o.word, "word such as 2, S_6.S_3.S_5* or 21*")->required();
    apply_cmd->add_option("--aut", o.auts, "index from `autos`")->expected(1);

    auto *compose_cmd = sub("compose", "lambda_p after lambda_q, or composite automorphisms",
                            cmd_compose);
    level_opt(compose_cmd, false);
    perm_opt(compose_cmd, true);
    compose_cmd->add_option("--aut", o.auts, "graph automorphism indices, one per --perm");

    auto *autos_cmd = sub("autos", "graph automorphisms, conjugates, inner and (P) evidence",
                          cmd_autos);
    level_opt(autos_cmd, false);
    autos_cmd->add_option("--perm", o.perms, "permutation to study")->expected(1);
    autos_cmd->add_option("--inner-level", o.inner_level, "deepest level of the inner search")
        ->capture_default_str();
    autos_cmd->add_option("--depth", o.depth, "property (P) test depth")->capture_default_str();
    autos_cmd->add_option("--cap", o.cap, "enumeration cap")->capture_default_str();

    auto *k_cmd = sub("ktheory", "K0 and K1 of the graph algebra", cmd_ktheory);
    k_cmd->add_option("--json", o.json, "write the groups");

    auto *loc_cmd = sub("localized", "chains, nilpotency and inverse of a localized unitary",
                        cmd_localized);
    loc_cmd->add_option("unitary", o.unitary_file, "unitary JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    loc_cmd->add_option("--iterations", o.stabilize_cap, "stabilization cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kParse;
    }

    try {
        for (auto *c : app.get_subcommands())
            return run.at(c)(o);
    } catch (const ValidationError &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const std::invalid_argument &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const CapExceeded &e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kCap;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
