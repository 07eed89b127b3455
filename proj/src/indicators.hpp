/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "corpus.hpp"
#include "rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace snipkit {

enum class Mode {
    rip,
    snip_original,
    snip_revised,
    audience_factor,
    fractional_counting,
    apriori,
};

std::optional<Mode> mode_from_string(std::string_view name);
std::string to_string(Mode mode);

// One citing publication in a journal's subject field. In original mode
// entries are distinct publications (multiplicity 1, p unused); in revised
// mode the field is a multiset and multiplicity counts the qualifying
// references the citing publication makes into the cited journal's window.
struct SubjectFieldEntry {
    PubIdx citing = 0;
    long r = 0;          // active references of the citing publication
    Rational p = 1;      // active share of its journal-year cohort
    long multiplicity = 1;
};

struct ScoreFlags {
    bool is_citing_journal = false;
    bool below_min_pubs = false;
    long zero_r_dropped = 0;      // citation events from publications with r = 0
    long zero_weight_dropped = 0; // audience-factor events from all-zero cohorts
};

// Scores are exact rationals; an absent optional marks an undefined score
// (m = 0 journals carry no score at all, an empty subject field leaves
// dcp undefined). A journal with publications but zero retained citations
// has snip = 0 in revised mode.
struct JournalScore {
    std::string journal_id;
    long m = 0; // publications in the cited window [Y-3, Y-1]
    long n = 0; // retained citation events
    std::optional<Rational> rip;
    std::optional<Rational> dcp;
    std::optional<Rational> rdcp; // original mode only
    std::optional<Rational> snip; // headline value (equals rip in rip mode)
    ScoreFlags flags;
};

struct IndicatorTable {
    Mode mode = Mode::rip;
    int year = 0;
    std::vector<JournalScore> scores; // sorted by journal_id
    std::optional<Rational> median_dcp;
    std::optional<Rational> weighted_mean_snip;        // all scored journals
    std::optional<Rational> weighted_mean_snip_citing; // citing journals only
    std::string notes;

    const JournalScore* find(std::string_view journal_id) const;
};

struct TableOptions {
    long min_pubs = 100; // reporting filter, flagged on scores
    int threads = 1;
    std::string notes;
};

// Precomputed citing-side quantities for one (corpus, citing set) pair:
// per-publication active-reference counts, per-journal cohort active
// shares (the p of every citing publication from that cohort) and cohort
// mean active-reference counts (the audience-factor denominator).
struct CitingContext {
    std::vector<long> active_refs; // per publication; year-of-analysis pubs only
    std::vector<long> total_refs;
    std::vector<std::optional<Rational>> cohort_share;     // per journal
    std::vector<std::optional<Rational>> cohort_mean_refs; // per journal

    static CitingContext build(const Corpus& corpus, const JournalMask& citing, int threads = 1);
};

// --- per-operation entry points -------------------------------------------

// n / m with citations counted from `citing` only; no score when m = 0.
std::optional<Rational> compute_rip(const Corpus& corpus, const JournalMask& citing, JournalIdx j);

// Distinct publications of the year of analysis citing `j` within the
// eight-year window; r measured against the whole database.
std::vector<SubjectFieldEntry> subject_field_original(const Corpus& corpus, JournalIdx j);

// Arithmetic mean of r; absent for an empty field.
std::optional<Rational> dcp_original(const std::vector<SubjectFieldEntry>& entries);

// Citation-event multiset of the three-year window from `citing` journals;
// entries with r = 0 are excluded and tallied in *zero_r_dropped.
std::vector<SubjectFieldEntry> subject_field_revised(const Corpus& corpus, const JournalMask& citing,
                                                     JournalIdx j, long* zero_r_dropped = nullptr);
std::vector<SubjectFieldEntry> subject_field_revised(const Corpus& corpus, const CitingContext& ctx,
                                                     const JournalMask& citing, JournalIdx j,
                                                     long* zero_r_dropped = nullptr);

// One third of the multiplicity-weighted harmonic mean of the p*r values;
// absent for an empty field.
std::optional<Rational> dcp_revised(const std::vector<SubjectFieldEntry>& entries);

// The ratio form: rip / dcp_revised with n restricted to retained entries.
std::optional<Rational> snip_revised(const Corpus& corpus, const JournalMask& citing, JournalIdx j);

// The sum form: (3/m) * sum multiplicity/(p*r). Equal to snip_revised on
// every input (both are evaluated exactly).
std::optional<Rational> snip_revised_direct(const Corpus& corpus, const JournalMask& citing,
                                            JournalIdx j);

// Whole-table computation. The citing mask is the explicit citation
// universe: pass the database mask for the original indicator (which
// predates citing-journal selection) and the selected set for the revised
// family. Trade journals are not scored.
IndicatorTable compute_table(const Corpus& corpus, const JournalMask& citing, Mode mode,
                             const TableOptions& options = {});

// scores.csv: journal_id,mode,m,n,rip,dcp,rdcp,snip,flags with values
// rendered at four decimals (round half even) and empty cells for
// undefined scores. Rows are sorted by journal_id.
std::string write_scores_csv(const IndicatorTable& table);
IndicatorTable read_scores_csv(const std::string& text);

} // namespace snipkit
