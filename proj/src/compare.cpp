/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "compare.hpp"

#include "error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace snipkit {

ComparisonReport compare_tables(const IndicatorTable& a, const IndicatorTable& b,
                                const ComparisonOptions& options) {
    if (a.year != 0 && b.year != 0 && a.year != b.year)
        fail(ErrorKind::invalid, "tables cover different years of analysis");

    ComparisonReport report;
    report.mode_a = to_string(a.mode);
    report.mode_b = to_string(b.mode);

    struct Pair {
        const JournalScore* a;
        const JournalScore* b;
    };
    std::vector<Pair> common;
    long skipped = 0;
    for (const auto& score : a.scores) {
        const JournalScore* other = b.find(score.journal_id);
        if (!other || !score.snip || !other->snip) {
            ++skipped;
            continue;
        }
        common.push_back({&score, other});
    }
    for (const auto& score : b.scores)
        if (!a.find(score.journal_id)) ++skipped;
    report.n_common = static_cast<long>(common.size());
    report.n_skipped = skipped;

    // Means and the default factor over all common journals.
    BigInt weight_a = 0, weight_b = 0;
    Rational sum_a = 0, sum_b = 0;
    for (const auto& pair : common) {
        sum_a += *pair.a->snip * pair.a->m;
        weight_a += pair.a->m;
        sum_b += *pair.b->snip * pair.b->m;
        weight_b += pair.b->m;
    }
    if (weight_a == 0 || weight_b == 0)
        fail(ErrorKind::invalid, "tables share no journals with defined scores");
    report.weighted_mean_a = sum_a / Rational(weight_a);
    report.weighted_mean_b = sum_b / Rational(weight_b);
    if (report.weighted_mean_a == 0)
        fail(ErrorKind::invalid, "cannot derive a difference factor from an all-zero table");
    report.mean_ratio = report.weighted_mean_b / report.weighted_mean_a;
    report.diff_factor = options.diff_factor ? *options.diff_factor : report.mean_ratio;
    if (report.diff_factor == 0) fail(ErrorKind::invalid, "difference factor must be nonzero");

    std::vector<Pair> filtered;
    for (const auto& pair : common)
        if (pair.a->m >= options.min_pubs && pair.b->m >= options.min_pubs) filtered.push_back(pair);
    report.n_compared = static_cast<long>(filtered.size());
    if (filtered.size() < 2)
        fail(ErrorKind::invalid, "fewer than two common journals pass the min-pubs filter");

    // Pearson correlation over the filtered pairs.
    double n = static_cast<double>(filtered.size());
    double mean_a = 0, mean_b = 0;
    for (const auto& pair : filtered) {
        mean_a += to_double(*pair.a->snip);
        mean_b += to_double(*pair.b->snip);
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0, var_a = 0, var_b = 0;
    for (const auto& pair : filtered) {
        double da = to_double(*pair.a->snip) - mean_a;
        double db = to_double(*pair.b->snip) - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    report.correlation = (var_a == 0 || var_b == 0) ? 0.0 : cov / std::sqrt(var_a * var_b);

    std::vector<DiffEntry> diffs;
    diffs.reserve(filtered.size());
    report.scatter.reserve(filtered.size());
    for (const auto& pair : filtered) {
        DiffEntry entry;
        entry.journal_id = pair.a->journal_id;
        entry.a = *pair.a->snip;
        entry.b = *pair.b->snip;
        entry.diff = entry.a - entry.b / report.diff_factor;
        diffs.push_back(entry);
        report.scatter.push_back({entry.journal_id, to_double(entry.a), to_double(entry.b)});
    }
    std::sort(diffs.begin(), diffs.end(), [](const DiffEntry& x, const DiffEntry& y) {
        if (x.diff != y.diff) return x.diff > y.diff;
        return x.journal_id < y.journal_id;
    });
    for (const auto& d : diffs) {
        if (d.diff <= 0 || static_cast<int>(report.top_positive.size()) >= options.top_n) break;
        report.top_positive.push_back(d);
    }
    for (auto it = diffs.rbegin(); it != diffs.rend(); ++it) {
        if (it->diff >= 0 || static_cast<int>(report.top_negative.size()) >= options.top_n) break;
        report.top_negative.push_back(*it);
    }
    return report;
}

nlohmann::ordered_json comparison_to_json(const ComparisonReport& report) {
    nlohmann::ordered_json j;
    j["mode_a"] = report.mode_a;
    j["mode_b"] = report.mode_b;
    j["n_common"] = report.n_common;
    j["n_compared"] = report.n_compared;
    j["n_skipped"] = report.n_skipped;
    j["correlation"] = report.correlation;
    j["weighted_mean_a"] = to_double(report.weighted_mean_a);
    j["weighted_mean_b"] = to_double(report.weighted_mean_b);
    j["mean_ratio"] = to_double(report.mean_ratio);
    j["diff_factor"] = to_double(report.diff_factor);
    auto dump_entries = [](const std::vector<DiffEntry>& entries) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& e : entries)
            arr.push_back({{"journal_id", e.journal_id},
                           {"a", to_double(e.a)},
                           {"b", to_double(e.b)},
                           {"diff", to_double(e.diff)}});
        return arr;
    };
    j["top_positive"] = dump_entries(report.top_positive);
    j["top_negative"] = dump_entries(report.top_negative);
    auto scatter = nlohmann::ordered_json::array();
    for (const auto& p : report.scatter)
        scatter.push_back({{"journal_id", p.journal_id}, {"a", p.a}, {"b", p.b}});
    j["scatter"] = scatter;
    return j;
}

} // namespace snipkit
