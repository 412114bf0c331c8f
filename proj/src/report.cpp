#include "gel/report.hpp"

#include "gel/weyl.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace gel {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string hex16(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

CertificateRecord record_of(const Graph &g, const DecisionCertificate &c) {
    CertificateRecord r;
    r.verdict = c.verdict;
    r.nodes = c.nodes;
    r.arcs = c.arcs;
    r.sync_length = c.sync_length;
    auto pair = [&](const PathPair &p) {
        return std::make_pair(format_path(g, p.first), format_path(g, p.second));
    };
    for (const auto &p : c.order)
        r.order.push_back(pair(p));
    for (const auto &p : c.cycle)
        r.cycle.push_back(pair(p));
    for (const auto &l : c.labels) {
        std::vector<std::string> names;
        for (EdgeId e : l)
            names.push_back(g.edge(e).name);
        r.labels.push_back(std::move(names));
    }
    return r;
}

// Deepest level <= want whose enumeration fits under the cap.
std::size_t searchable_level(const GraphPtr &g, std::size_t want, std::uint64_t cap) {
    std::size_t l = 0;
    while (l < want) {
        auto n = Enumeration(g, l + 1).count();
        if (!n || *n > cap)
            break;
        ++l;
    }
    return l;
}

template <class T> ordered_json opt(const std::optional<T> &x) {
    return x ? ordered_json(*x) : ordered_json(nullptr);
}

template <class T> std::optional<T> opt_from(const json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null())
        return std::nullopt;
    return j.at(key).get<T>();
}

ordered_json to_json(const CertificateRecord &c) {
    auto pairs = [](const auto &v) {
        ordered_json a = ordered_json::array();
        for (const auto &[x, y] : v)
            a.push_back({x, y});
        return a;
    };
    ordered_json j;
    j["verdict"] = c.verdict;
    j["nodes"] = c.nodes;
    j["arcs"] = c.arcs;
    j["sync_length"] = opt(c.sync_length);
    j["order"] = pairs(c.order);
    j["cycle"] = pairs(c.cycle);
    j["labels"] = c.labels;
    return j;
}

CertificateRecord certificate_from_json(const json &j) {
    CertificateRecord c;
    c.verdict = j.at("verdict").get<bool>();
    c.nodes = j.at("nodes").get<std::size_t>();
    c.arcs = j.at("arcs").get<std::size_t>();
    c.sync_length = opt_from<std::size_t>(j, "sync_length");
    for (const auto &p : j.at("order"))
        c.order.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    for (const auto &p : j.at("cycle"))
        c.cycle.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    c.labels = j.at("labels").get<std::vector<std::vector<std::string>>>();
    return c;
}

std::string verdict_cell(const CertificateRecord &c) {
    if (c.verdict)
        return "yes m=" + std::to_string(c.sync_length.value_or(0));
    return "no cycle " + std::to_string(c.cycle.size());
}

std::string plural(std::size_t n, const std::string &one, const std::string &many) {
    return std::to_string(n) + " " + (n == 1 ? one : many);
}

} // namespace

bool operator==(const ClassificationReport &a, const ClassificationReport &b) {
    return a.schema == b.schema && a.engine_version == b.engine_version &&
           a.graph_name == b.graph_name && a.graph_digest == b.graph_digest &&
           a.level == b.level && a.count == b.count && a.refusal == b.refusal &&
           a.records == b.records && a.summary == b.summary;
}

std::string graph_digest(const Graph &g) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : g.to_text()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return hex16(h);
}

UnitaryRecord analyze_unitary(const BlockPermutation &p, std::uint64_t index,
                              const SweepOptions &opt) {
    const Graph &g = p.graph();
    UnitaryRecord r;
    r.index = index;
    r.cycles = p.cycles();
    r.digest = hex16(p.digest());
    ClassifyResult c = classify(p);
    r.reduced = c.reduced.cycles();
    r.reduced_level = c.reduced.level();
    r.condition_b = record_of(g, c.b);
    r.condition_d = record_of(g, c.d);
    r.classification = to_string(c.kind);
    if (c.kind != Classification::Automorphism) {
        r.order_note = "not invertible";
        return r;
    }

    BlockPermutation inv = invert(c.reduced);
    r.inverse = inv.cycles();
    r.inverse_level = inv.level();
    OrderResult o = order_up_to(c.reduced, opt.order_cap);
    r.order = o.order;
    r.order_note = o.note;

    PropertyPRecord pp;
    pp.test_depth = opt.property_depth;
    pp.m = property_p_certificate(c.reduced, opt.property_depth).m;
    pp.inverse_m = property_p_certificate(inv, opt.property_depth).m;
    r.property_p = pp;

    InnerRecord in;
    in.max_level = searchable_level(p.graph_ptr(), opt.inner_level, opt.enumeration_cap);
    if (in.max_level > 0) {
        InnerSearch s = inner_test(c.reduced, in.max_level, opt.enumeration_cap);
        in.candidates = s.candidates;
        if (s.witness)
            in.witness = s.witness->cycles() + " @" + std::to_string(s.witness->level());
    }
    r.inner_search = in;
    return r;
}

ClassificationReport run_sweep(const GraphPtr &g, const std::string &graph_name,
                               const SweepOptions &opt) {
    const auto start = std::chrono::steady_clock::now();
    require_no_sinks(*g);
    ClassificationReport rep;
    rep.graph_name = graph_name;
    rep.graph_digest = graph_digest(*g);
    rep.level = opt.level;
    Enumeration en(g, opt.level);
    rep.count = en.count_string();
    if (!en.count() || *en.count() > opt.enumeration_cap) {
        rep.refusal = "enumeration of " + rep.count + " unitaries exceeds the cap of " +
                      std::to_string(opt.enumeration_cap);
    } else {
        const std::uint64_t n = *en.count();
        rep.records.resize(n);
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_lock;
        auto work = [&] {
            for (std::uint64_t i; (i = next++) < n;) {
                try {
                    rep.records[i] = analyze_unitary(en.nth(i), i, opt);
                } catch (...) {
                    std::lock_guard lk(failure_lock);
                    if (!failure)
                        failure = std::current_exception();
                    next = n;
                }
            }
        };
        const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, n));
        if (workers == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work);
        }
        if (failure)
            std::rethrow_exception(failure);
    }
    for (const auto &r : rep.records) {
        if (r.classification == to_string(Classification::Automorphism))
            ++rep.summary.automorphisms;
        else if (r.classification == to_string(Classification::DiagonalAutomorphismOnly))
            ++rep.summary.diagonal_only;
        else
            ++rep.summary.proper;
    }
    rep.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return rep;
}

std::string summary_line(const ClassificationReport &r) {
    return plural(r.records.size(), "unitary", "unitaries") + ": " +
           plural(r.summary.automorphisms, "automorphism", "automorphisms") + ", " +
           std::to_string(r.summary.diagonal_only) + " diagonal-automorphism-only, " +
           std::to_string(r.summary.proper) + " proper";
}

ordered_json to_json(const UnitaryRecord &r) {
    ordered_json j;
    j["index"] = r.index;
    j["cycles"] = r.cycles;
    j["digest"] = r.digest;
    j["reduced"] = {{"cycles", r.reduced}, {"level", r.reduced_level}};
    j["condition_b"] = to_json(r.condition_b);
    j["condition_d"] = to_json(r.condition_d);
    j["classification"] = r.classification;
    if (r.inverse)
        j["inverse"] = {{"cycles", *r.inverse}, {"level", r.inverse_level.value_or(0)}};
    else
        j["inverse"] = nullptr;
    j["order"] = opt(r.order);
    j["order_note"] = r.order_note;
    if (r.property_p)
        j["property_p"] = {{"m", opt(r.property_p->m)},
                           {"inverse_m", opt(r.property_p->inverse_m)},
                           {"test_depth", r.property_p->test_depth}};
    else
        j["property_p"] = nullptr;
    if (r.inner_search)
        j["inner_search"] = {{"max_level", r.inner_search->max_level},
                             {"candidates", r.inner_search->candidates},
                             {"witness", opt(r.inner_search->witness)}};
    else
        j["inner_search"] = nullptr;
    return j;
}

ordered_json to_json(const ClassificationReport &r) {
    ordered_json j;
    j["schema"] = r.schema;
    j["engine_version"] = r.engine_version;
    j["graph"] = {{"name", r.graph_name}, {"digest", r.graph_digest}};
    j["level"] = r.level;
    j["count"] = r.count;
    j["refusal"] = opt(r.refusal);
    j["summary"] = {{"total", r.records.size()},
                    {"automorphisms", r.summary.automorphisms},
                    {"diagonal_automorphism_only", r.summary.diagonal_only},
                    {"proper", r.summary.proper},
                    {"line", summary_line(r)}};
    ordered_json recs = ordered_json::array();
    for (const auto &x : r.records)
        recs.push_back(to_json(x));
    j["records"] = std::move(recs);
    j["wall_clock_ms"] = r.wall_clock_ms;
    return j;
}

UnitaryRecord record_from_json(const json &j) {
    try {
        UnitaryRecord r;
        r.index = j.at("index").get<std::uint64_t>();
        r.cycles = j.at("cycles").get<std::string>();
        r.digest = j.at("digest").get<std::string>();
        r.reduced = j.at("reduced").at("cycles").get<std::string>();
        r.reduced_level = j.at("reduced").at("level").get<std::size_t>();
        r.condition_b = certificate_from_json(j.at("condition_b"));
        r.condition_d = certificate_from_json(j.at("condition_d"));
        r.classification = j.at("classification").get<std::string>();
        if (j.contains("inverse") && !j.at("inverse").is_null()) {
            r.inverse = j.at("inverse").at("cycles").get<std::string>();
            r.inverse_level = j.at("inverse").at("level").get<std::size_t>();
        }
        r.order = opt_from<std::size_t>(j, "order");
        r.order_note = j.at("order_note").get<std::string>();
        if (j.contains("property_p") && !j.at("property_p").is_null()) {
            const auto &p = j.at("property_p");
            r.property_p = PropertyPRecord{opt_from<std::size_t>(p, "m"),
                                           opt_from<std::size_t>(p, "inverse_m"),
                                           p.at("test_depth").get<std::size_t>()};
        }
        if (j.contains("inner_search") && !j.at("inner_search").is_null()) {
            const auto &s = j.at("inner_search");
            r.inner_search = InnerRecord{s.at("max_level").get<std::size_t>(),
                                         s.at("candidates").get<std::uint64_t>(),
                                         opt_from<std::string>(s, "witness")};
        }
        return r;
    } catch (const json::exception &e) {
        throw ParseError(0, std::string("report record: ") + e.what());
    }
}

ClassificationReport report_from_json(const json &j) {
    ClassificationReport r;
    try {
        r.schema = j.at("schema").get<std::string>();
        if (r.schema != kReportSchema)
            throw ParseError(0, "unsupported report schema " + r.schema);
        r.engine_version = j.at("engine_version").get<std::string>();
        r.graph_name = j.at("graph").at("name").get<std::string>();
        r.graph_digest = j.at("graph").at("digest").get<std::string>();
        r.level = j.at("level").get<std::size_t>();
        r.count = j.at("count").get<std::string>();
        r.refusal = opt_from<std::string>(j, "refusal");
        for (const auto &x : j.at("records"))
            r.records.push_back(record_from_json(x));
        const auto &s = j.at("summary");
        r.summary = {s.at("automorphisms").get<std::size_t>(),
                     s.at("diagonal_automorphism_only").get<std::size_t>(),
                     s.at("proper").get<std::size_t>()};
        r.wall_clock_ms = j.at("wall_clock_ms").get<double>();
    } catch (const json::exception &e) {
        throw ParseError(0, std::string("report: ") + e.what());
    }
    if (r.summary.automorphisms + r.summary.diagonal_only + r.summary.proper !=
        r.records.size())
        throw ParseError(0, "report summary does not match its records");
    return r;
}

std::string render_table(const ClassificationReport &r) {
    std::ostringstream os;
    os << "graph " << r.graph_name << " [" << r.graph_digest << "] level " << r.level << ": "
       << r.count << " unitaries\n";
    if (r.refusal)
        os << "refused: " << *r.refusal << "\n";

    std::vector<std::vector<std::string>> rows{
        {"#", "unitary", "reduced", "(b)", "(d)", "class", "inverse", "order", "(P)", "inner"}};
    for (const auto &x : r.records) {
        std::string inverse = x.inverse ? *x.inverse + " @" + std::to_string(*x.inverse_level)
                                        : "-";
        std::string order = x.order ? std::to_string(*x.order) : x.order_note;
        std::string prop = "-";
        if (x.property_p) {
            auto m = [](const std::optional<std::size_t> &v) {
                return v ? std::to_string(*v) : std::string("none");
            };
            prop = "m=" + m(x.property_p->m) + "/" + m(x.property_p->inverse_m) + " d" +
                   std::to_string(x.property_p->test_depth);
        }
        std::string inner = "-";
        if (x.inner_search)
            inner = x.inner_search->witness
                        ? "Ad " + *x.inner_search->witness
                        : "none <=" + std::to_string(x.inner_search->max_level) + " (" +
                              std::to_string(x.inner_search->candidates) + ")";
        rows.push_back({std::to_string(x.index), x.cycles,
                        x.reduced + " @" + std::to_string(x.reduced_level),
                        verdict_cell(x.condition_b), verdict_cell(x.condition_d),
                        x.classification, inverse, order, prop, inner});
    }
    if (r.records.empty())
        rows.clear();
    std::vector<std::size_t> width(rows.empty() ? 0 : rows[0].size(), 0);
    for (const auto &row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    for (const auto &row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size())
                line += std::string(width[i] - row[i].size() + 2, ' ');
        }
        os << line << "\n";
    }
    os << summary_line(r) << "\n";
    std::vector<std::string> autos;
    for (const auto &x : r.records)
        if (x.classification == to_string(Classification::Automorphism))
            autos.push_back(x.cycles);
    if (!autos.empty()) {
        os << "automorphisms:";
        for (std::size_t i = 0; i < autos.size(); ++i)
            os << (i ? ", " : " ") << autos[i];
        os << "\n";
    }
    return os.str();
}

std::string render_record(const UnitaryRecord &r) {
    std::ostringstream os;
    auto pairs = [](const std::vector<std::pair<std::string, std::string>> &v) {
        std::string s;
        for (const auto &[a, b] : v)
            s += (s.empty() ? "" : " ") + ("(" + a + "," + b + ")");
        return s;
    };
    auto cert = [&](const char *name, const CertificateRecord &c) {
        os << name << ": " << (c.verdict ? "holds" : "fails") << " (" << c.nodes << " pairs, "
           << c.arcs << " arcs)";
        if (c.verdict) {
            os << ", synchronizing length " << c.sync_length.value_or(0) << "\n";
        } else {
            os << "\n  cycle: " << pairs(c.cycle) << "\n  labels:";
            for (const auto &l : c.labels) {
                os << " {";
                for (std::size_t i = 0; i < l.size(); ++i)
                    os << (i ? "," : "") << l[i];
                os << "}";
            }
            os << "\n";
        }
    };
    os << "unitary " << r.cycles << " [" << r.digest << "]\n";
    os << "reduced: " << r.reduced << " at level " << r.reduced_level << "\n";
    cert("condition (b)", r.condition_b);
    cert("condition (d)", r.condition_d);
    os << "classification: " << r.classification << "\n";
    if (r.inverse)
        os << "inverse: " << *r.inverse << " at level " << *r.inverse_level << "\n";
    os << "order: " << (r.order ? std::to_string(*r.order) : r.order_note) << "\n";
    if (r.property_p) {
        auto m = [](const std::optional<std::size_t> &v) {
            return v ? std::to_string(*v) : std::string("none");
        };
        os << "property (P): m = " << m(r.property_p->m) << ", inverse m = "
           << m(r.property_p->inverse_m) << " (depth " << r.property_p->test_depth << ")\n";
    }
    if (r.inner_search) {
        if (r.inner_search->witness)
            os << "inner: Ad(w) with w = " << *r.inner_search->witness << "\n";
        else
            os << "inner: no w up to level " << r.inner_search->max_level << " ("
               << r.inner_search->candidates << " candidates)\n";
    }
    return os.str();
}

} // namespace gel
