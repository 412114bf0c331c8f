#include "fixtures.hpp"
#include "gel/report.hpp"

#include <gtest/gtest.h>

using namespace gel;

namespace {

SweepOptions at(std::size_t k, unsigned workers = 1) {
    SweepOptions o;
    o.level = k;
    o.workers = workers;
    o.inner_level = 2;
    return o;
}

std::string stable_dump(ClassificationReport r) {
    r.wall_clock_ms = 0;
    return to_json(r).dump(2);
}

std::vector<std::string> automorphisms(const ClassificationReport &r) {
    std::vector<std::string> out;
    for (const auto &x : r.records)
        if (x.classification == "AUTOMORPHISM")
            out.push_back(x.cycles);
    return out;
}

} // namespace

TEST(Report, Ex62Sweep) {
    auto r = run_sweep(fixtures::ex62(), "ex62", at(2));
    EXPECT_EQ(r.records.size(), 8u);
    EXPECT_EQ(r.count, "8");
    EXPECT_EQ(summary_line(r), "8 unitaries: 2 automorphisms, 0 diagonal-automorphism-only, 6 proper");
    EXPECT_EQ(automorphisms(r), (std::vector<std::string>{"id", "(25 63)"}));
    const auto &sigma = r.records[2];
    EXPECT_EQ(sigma.inverse, "(25 63)");
    EXPECT_EQ(sigma.order, 2u);
    ASSERT_TRUE(sigma.property_p);
    EXPECT_EQ(sigma.property_p->m, 1u);
    EXPECT_EQ(sigma.property_p->inverse_m, 1u);
    ASSERT_TRUE(sigma.inner_search);
    EXPECT_FALSE(sigma.inner_search->witness);
    EXPECT_EQ(sigma.inner_search->max_level, 2u);
    // the table has one row per unitary between header and summary
    std::string table = render_table(r);
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 1 + 1 + 8 + 2);
}

TEST(Report, FibonacciLevelThreeSweep) {
    auto r = run_sweep(fixtures::fib(), "fib", at(3));
    EXPECT_EQ(r.records.size(), 24u);
    EXPECT_EQ(r.summary, (ReportSummary{2, 2, 20}));
    EXPECT_EQ(summary_line(r), "24 unitaries: 2 automorphisms, 2 diagonal-automorphism-only, 20 proper");
}

TEST(Report, ParallelMatchesSerial) {
    for (auto [g, k] : {std::pair{fixtures::fib(), std::size_t{3}}, {fixtures::ex62(), 2}}) {
        auto serial = run_sweep(g, "g", at(k, 1));
        auto parallel = run_sweep(g, "g", at(k, 4));
        EXPECT_EQ(serial, parallel);
        EXPECT_EQ(stable_dump(serial), stable_dump(parallel));
    }
}

TEST(Report, JsonRoundTrip) {
    auto r = run_sweep(fixtures::fib(), "fib", at(3));
    auto back = report_from_json(nlohmann::json::parse(to_json(r).dump()));
    EXPECT_EQ(back, r);
    EXPECT_EQ(back.wall_clock_ms, r.wall_clock_ms);
    EXPECT_EQ(to_json(back).dump(), to_json(r).dump());
    EXPECT_EQ(render_table(back), render_table(r));
    for (const auto &x : r.records)
        EXPECT_EQ(record_from_json(nlohmann::json::parse(to_json(x).dump())), x);
}

TEST(Report, RefusalOverCap) {
    auto r = run_sweep(fixtures::fib(), "fib", at(5));
    ASSERT_TRUE(r.refusal);
    EXPECT_TRUE(r.records.empty());
    EXPECT_NE(r.count, "0");
    EXPECT_NE(render_table(r).find("refused"), std::string::npos);
    EXPECT_EQ(report_from_json(nlohmann::json::parse(to_json(r).dump())), r);
}

TEST(Report, SchemaErrors) {
    auto j = nlohmann::json::parse(to_json(run_sweep(fixtures::ex62(), "ex62", at(1))).dump());
    auto bad = j;
    bad["schema"] = "gel-report/0";
    EXPECT_THROW(report_from_json(bad), ParseError);
    bad = j;
    bad.erase("records");
    EXPECT_THROW(report_from_json(bad), ParseError);
    bad = j;
    bad["summary"]["proper"] = 99;
    EXPECT_THROW(report_from_json(bad), ParseError);
}

TEST(Report, GraphDigestIsStable) {
    EXPECT_EQ(graph_digest(*fixtures::fib()), graph_digest(*fixtures::fib()));
    EXPECT_NE(graph_digest(*fixtures::fib()), graph_digest(*fixtures::ex62()));
    EXPECT_EQ(graph_digest(*fixtures::fib()).size(), 16u);
}
