/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "compare.hpp"
#include "error.hpp"
#include "selection.hpp"
#include "support/fixtures.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

using namespace snipkit;

namespace {

IndicatorTable make_table(Mode mode, std::vector<std::tuple<std::string, long, double>> rows) {
    IndicatorTable table;
    table.mode = mode;
    for (auto& [id, m, snip] : rows) {
        JournalScore s;
        s.journal_id = id;
        s.m = m;
        s.n = 0;
        s.snip = parse_decimal(format_decimal(Rational(std::llround(snip * 10000), 10000), 4));
        table.scores.push_back(std::move(s));
    }
    std::sort(table.scores.begin(), table.scores.end(),
              [](const JournalScore& a, const JournalScore& b) { return a.journal_id < b.journal_id; });
    return table;
}

} // namespace

TEST_CASE("a table compared with itself has correlation one and zero differences") {
    Corpus corpus = fixtures::merger_example().build();
    auto selected = select_citing_journals(corpus);
    IndicatorTable table = compute_table(corpus, selected.included_mask, Mode::snip_revised);
    ComparisonOptions options;
    options.min_pubs = 1;
    auto report = compare_tables(table, table, options);
    CHECK(report.correlation == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.diff_factor == 1);
    CHECK(report.top_positive.empty());
    CHECK(report.top_negative.empty());
    CHECK(report.n_common == static_cast<long>(table.scores.size()));
}

TEST_CASE("three-point Pearson correlation matches the hand computation") {
    auto a = make_table(Mode::snip_revised, {{"A", 10, 1.0}, {"B", 10, 2.0}, {"C", 10, 3.0}});
    auto b = make_table(Mode::snip_original, {{"A", 10, 1.0}, {"B", 10, 3.0}, {"C", 10, 2.0}});
    ComparisonOptions options;
    options.min_pubs = 1;
    options.diff_factor = Rational(1);
    auto report = compare_tables(a, b, options);
    // x = {1,2,3}, y = {1,3,2}: covariance 1, variances 2 -> r = 0.5
    CHECK(report.correlation == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.n_compared == 3);
}

TEST_CASE("difference lists follow Eq.-style scaling") {
    auto revised = make_table(Mode::snip_revised, {{"ACTA", 120, 35.47},
                                                   {"CALM", 150, 6.0},
                                                   {"IEEE", 200, 5.0}});
    auto original = make_table(Mode::snip_original, {{"ACTA", 120, 29.39},
                                                     {"CALM", 150, 7.0},
                                                     {"IEEE", 200, 16.73}});
    ComparisonOptions options;
    options.min_pubs = 100;
    options.diff_factor = parse_decimal("1.26");
    auto report = compare_tables(revised, original, options);

    REQUIRE_FALSE(report.top_positive.empty());
    CHECK(report.top_positive.front().journal_id == "ACTA");
    double acta = to_double(report.top_positive.front().diff);
    CHECK(std::abs(acta - (35.47 - 29.39 / 1.26)) < 1e-9);
    CHECK(std::abs(acta - 12.07) < 0.1); // the published rounded value

    REQUIRE_FALSE(report.top_negative.empty());
    CHECK(report.top_negative.front().journal_id == "IEEE");
    CHECK(report.top_negative.front().diff < 0);
}

TEST_CASE("the default factor is the ratio of publication-weighted means") {
    auto a = make_table(Mode::snip_revised, {{"A", 10, 1.0}, {"B", 30, 2.0}});
    auto b = make_table(Mode::snip_original, {{"A", 10, 2.0}, {"B", 30, 3.0}});
    ComparisonOptions options;
    options.min_pubs = 1;
    auto report = compare_tables(a, b, options);
    CHECK(report.weighted_mean_a == Rational(10 * 1 + 30 * 2, 40));
    CHECK(report.weighted_mean_b == Rational(10 * 2 + 30 * 3, 40));
    CHECK(report.mean_ratio == report.weighted_mean_b / report.weighted_mean_a);
    CHECK(report.diff_factor == report.mean_ratio);
}

TEST_CASE("min_pubs filters the correlation set but not the means") {
    auto a = make_table(Mode::snip_revised,
                        {{"A", 200, 1.0}, {"B", 200, 2.0}, {"TINY", 5, 9.0}});
    auto b = make_table(Mode::snip_original,
                        {{"A", 200, 1.0}, {"B", 200, 2.0}, {"TINY", 5, 9.0}});
    ComparisonOptions options;
    options.min_pubs = 100;
    auto report = compare_tables(a, b, options);
    CHECK(report.n_common == 3);
    CHECK(report.n_compared == 2);
    // TINY still contributes to the weighted means
    CHECK(report.weighted_mean_a == Rational(200 * 1 + 200 * 2 + 5 * 9, 405));
}

TEST_CASE("journals missing from one table are skipped and tallied") {
    auto a = make_table(Mode::snip_revised, {{"A", 10, 1.0}, {"B", 10, 2.0}, {"ONLY-A", 10, 3.0}});
    auto b = make_table(Mode::snip_original, {{"A", 10, 1.0}, {"B", 10, 2.0}, {"ONLY-B", 10, 3.0}});
    ComparisonOptions options;
    options.min_pubs = 1;
    auto report = compare_tables(a, b, options);
    CHECK(report.n_common == 2);
    CHECK(report.n_skipped == 2);
}

TEST_CASE("fewer than two comparable journals is an error") {
    auto a = make_table(Mode::snip_revised, {{"A", 10, 1.0}});
    auto b = make_table(Mode::snip_original, {{"A", 10, 1.0}});
    ComparisonOptions options;
    options.min_pubs = 1;
    CHECK_THROWS_AS(compare_tables(a, b, options), Error);

    auto disjoint_a = make_table(Mode::snip_revised, {{"A", 10, 1.0}, {"B", 10, 2.0}});
    auto disjoint_b = make_table(Mode::snip_original, {{"C", 10, 1.0}, {"D", 10, 2.0}});
    CHECK_THROWS_AS(compare_tables(disjoint_a, disjoint_b, options), Error);
}

TEST_CASE("comparison JSON carries the scatter pairs") {
    auto a = make_table(Mode::snip_revised, {{"A", 10, 1.5}, {"B", 10, 2.5}});
    auto b = make_table(Mode::snip_original, {{"A", 10, 2.0}, {"B", 10, 3.0}});
    ComparisonOptions options;
    options.min_pubs = 1;
    auto json = comparison_to_json(compare_tables(a, b, options));
    CHECK(json["mode_a"] == "snip-revised");
    CHECK(json["mode_b"] == "snip-original");
    REQUIRE(json["scatter"].size() == 2);
    CHECK(json["scatter"][0]["journal_id"] == "A");
    CHECK(json["scatter"][0]["a"] == 1.5);
    CHECK(json["scatter"][0]["b"] == 2.0);
}
