#pragma once

// Classification sweep over all permutative unitaries of one level, and its
// JSON and table renderings.

#include "gel/cond_d.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gel {

inline constexpr const char *kReportSchema = "gel-report/1";
inline constexpr const char *kEngineVersion = "1.0.0";

struct SweepOptions {
    std::size_t level = 2;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::size_t order_cap = 64;
    std::size_t inner_level = 3;
    std::size_t property_depth = 4;
    unsigned workers = 1;
};

/// A DecisionCertificate with paths and edges spelled out.
struct CertificateRecord {
    bool verdict = true;
    std::size_t nodes = 0;
    std::size_t arcs = 0;
    std::optional<std::size_t> sync_length;
    std::vector<std::pair<std::string, std::string>> order;
    std::vector<std::pair<std::string, std::string>> cycle;
    std::vector<std::vector<std::string>> labels;

    friend bool operator==(const CertificateRecord &, const CertificateRecord &) = default;
};

struct InnerRecord {
    std::size_t max_level = 0;
    std::uint64_t candidates = 0;
    std::optional<std::string> witness;
    friend bool operator==(const InnerRecord &, const InnerRecord &) = default;
};

struct PropertyPRecord {
    std::optional<std::size_t> m;         // for p
    std::optional<std::size_t> inverse_m; // for the inverse of p
    std::size_t test_depth = 0;
    friend bool operator==(const PropertyPRecord &, const PropertyPRecord &) = default;
};

/// Everything known about one unitary. Fields after `classification` are
/// filled for automorphisms only.
struct UnitaryRecord {
    std::uint64_t index = 0;
    std::string cycles;
    std::string digest;
    std::string reduced; // cycles of the level-reduced permutation
    std::size_t reduced_level = 0;
    CertificateRecord condition_b;
    CertificateRecord condition_d;
    std::string classification;
    std::optional<std::string> inverse;
    std::optional<std::size_t> inverse_level;
    std::optional<std::size_t> order;
    std::string order_note;
    std::optional<PropertyPRecord> property_p;
    std::optional<InnerRecord> inner_search;

    friend bool operator==(const UnitaryRecord &, const UnitaryRecord &) = default;
};

struct ReportSummary {
    std::size_t automorphisms = 0;
    std::size_t diagonal_only = 0;
    std::size_t proper = 0;
    friend bool operator==(const ReportSummary &, const ReportSummary &) = default;
};

struct ClassificationReport {
    std::string schema = kReportSchema;
    std::string engine_version = kEngineVersion;
    std::string graph_name;
    std::string graph_digest;
    std::size_t level = 0;
    std::string count;
    std::optional<std::string> refusal;
    std::vector<UnitaryRecord> records;
    ReportSummary summary;
    double wall_clock_ms = 0;

    /// Equal up to wall_clock_ms.
    friend bool operator==(const ClassificationReport &a, const ClassificationReport &b);
};

/// 16 hex digits of FNV-1a over the canonical graph text.
std::string graph_digest(const Graph &g);

UnitaryRecord analyze_unitary(const BlockPermutation &p, std::uint64_t index,
                              const SweepOptions &opt);

/// Every block permutation at opt.level, analysed on opt.workers threads.
/// Records keep enumeration order whatever the worker count. Over the cap
/// the report has no records and a refusal note.
ClassificationReport run_sweep(const GraphPtr &g, const std::string &graph_name,
                               const SweepOptions &opt);

/// "N unitaries: a automorphisms, d diagonal-automorphism-only, p proper".
std::string summary_line(const ClassificationReport &r);

nlohmann::ordered_json to_json(const UnitaryRecord &r);
nlohmann::ordered_json to_json(const ClassificationReport &r);
/// Throws ParseError on schema violations.
UnitaryRecord record_from_json(const nlohmann::json &j);
ClassificationReport report_from_json(const nlohmann::json &j);

std::string render_table(const ClassificationReport &r);
/// Multi-line detail of one record, certificates included.
std::string render_record(const UnitaryRecord &r);

} // namespace gel
