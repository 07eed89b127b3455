/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "corpus.hpp"
#include "rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <utility>
#include <vector>

namespace snipkit {

enum class ExclusionReason { trade, not_continuous, below_active_threshold };
const char* to_string(ExclusionReason reason);

struct SelectionOptions {
    Rational threshold = Rational(1, 5);
    int max_iterations = 1000;
    int threads = 1;
};

// Result of the citing-journal selection. `included` and `excluded`
// partition the journals with at least one publication in the year of
// analysis. The set is a fixed point: recomputing active shares against
// `included` changes no journal's membership.
struct CitingJournalSet {
    int year = 0;
    Rational threshold;
    int iterations = 0; // rounds evaluated, the last one producing no change
    JournalMask included_mask;
    std::vector<JournalIdx> included;                          // sorted by id
    std::vector<std::pair<JournalIdx, ExclusionReason>> excluded;   // sorted by id
    std::vector<std::pair<JournalIdx, int>> excluded_round;    // threshold drops only
    std::vector<std::pair<JournalIdx, Rational>> active_share; // step-3 entrants, vs final set
};

// Number of `pub`'s references that target a publication of the three
// preceding years in a journal from `included`. With `included` covering
// the whole database this is the original-indicator active-reference count.
long active_reference_count(const Corpus& corpus, PubIdx pub, const JournalMask& included);

// Fraction of the (journal, year) cohort's publications having at least
// one active reference. Throws on an empty cohort.
Rational cohort_active_share(const Corpus& corpus, const JournalMask& included,
                             JournalIdx journal, int year);

// Step 1: trade journals publishing in the year of analysis.
std::vector<JournalIdx> exclude_trade(const Corpus& corpus);
// Step 2: journals publishing in the year of analysis but lacking a
// publication in one of the three preceding years (trade excluded first).
std::vector<JournalIdx> exclude_noncontinuous(const Corpus& corpus);

// Steps 1-3. Step 3 starts from the step-1/2 survivors all included and
// repeatedly drops journals whose share of publications with at least one
// active reference falls below the threshold (ties are included), until no
// membership changes. The included set only shrinks, so the loop
// terminates in at most one round per journal.
CitingJournalSet select_citing_journals(const Corpus& corpus, const SelectionOptions& options = {});

// True when one more selection round on `set` drops nobody (fixed-point
// verification).
bool selection_round_is_stable(const Corpus& corpus, const CitingJournalSet& set);

nlohmann::ordered_json selection_to_json(const Corpus& corpus, const CitingJournalSet& set);
CitingJournalSet selection_from_json(const Corpus& corpus, const nlohmann::json& j);

} // namespace snipkit
