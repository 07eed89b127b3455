/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "indicators.hpp"
#include "rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace snipkit {

struct ComparisonOptions {
    long min_pubs = 100;                 // filter for correlation, scatter and top lists
    std::optional<Rational> diff_factor; // default: ratio of publication-weighted means
    int top_n = 10;
};

struct DiffEntry {
    std::string journal_id;
    Rational a;
    Rational b;
    Rational diff; // a - b / factor
};

struct ScatterPoint {
    std::string journal_id;
    double a = 0;
    double b = 0;
};

// Comparison of two indicator tables over their common journals. The
// publication-weighted means and the default difference factor use every
// common journal with a defined score; the correlation, scatter pairs and
// top-difference lists are restricted to journals passing min_pubs.
struct ComparisonReport {
    std::string mode_a, mode_b;
    long n_common = 0;   // defined in both tables
    long n_compared = 0; // also passing the min_pubs filter
    long n_skipped = 0;  // present in one table only, or score undefined
    double correlation = 0;
    Rational weighted_mean_a;
    Rational weighted_mean_b;
    Rational mean_ratio; // weighted_mean_b / weighted_mean_a
    Rational diff_factor;
    std::vector<DiffEntry> top_positive;
    std::vector<DiffEntry> top_negative;
    std::vector<ScatterPoint> scatter;
};

// Table `a` is the indicator under study (e.g. revised SNIP), `b` the
// reference (e.g. original SNIP): diff = snip_a - snip_b / factor. Throws
// when fewer than two common journals pass the filter.
ComparisonReport compare_tables(const IndicatorTable& a, const IndicatorTable& b,
                                const ComparisonOptions& options = {});

nlohmann::ordered_json comparison_to_json(const ComparisonReport& report);

} // namespace snipkit
