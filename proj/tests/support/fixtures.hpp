/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "corpus.hpp"

#include <string>
#include <vector>

namespace snipkit::fixtures {

struct RecordSet {
    std::vector<JournalRecord> journals;
    std::vector<PublicationRecord> publications;
    std::vector<MergePair> merges; // optional merge map

    Corpus build(int year = 2010) const;
    Corpus build_merged(int year = 2010) const;
    // Writes journals.csv / publications.jsonl (and merges.csv when the
    // merge map is nonempty) into `dir`.
    void write(const std::string& dir) const;
};

// The two-journal merger example: journals JX and JY with 10 publications
// each in the cited window, cited 120 and 240 times by distinct citing
// publications carrying 6 and 12 active references. Fillers pin the
// database median DCP at 3 before and after merging JY into JX, and every
// journal passes citing-journal selection with active share 1. Expected
// values (original indicator): SNIP 6, 6 and 5.40 after the merge;
// (revised indicator): DCP 2, 4, 3 and SNIP 6, 6, 6.
RecordSet merger_example();

// The added-citation example: journal JJ with 10 publications and 80
// citing publications carrying 4 active references each, median DCP
// pinned at 2, SNIP 4. With `extra_citation` a publication with 100
// active references cites JJ once, which drives the original SNIP down to
// 2187/700 (about 3.12) while the median stays 2.
RecordSet counterexample(bool extra_citation);

// Selection fixture: trade journal SA; SB's only active references point
// at SA and SC's at SB, so SB falls in round 1 and SC in round 2; SD is a
// stable anchor and SE sits exactly on the 20% threshold (1 of 5
// publications with an active reference). Expected: iterations 3,
// included {SD, SE}.
RecordSet cascading_selection();

// A small healthy corpus: journals publishing in all four years, each
// year-of-analysis publication citing a handful of in-window targets.
// Deterministic for a given seed.
RecordSet small_random(unsigned seed, int journals = 4, int pubs_per_year = 5,
                       int max_refs = 4);

} // namespace snipkit::fixtures
