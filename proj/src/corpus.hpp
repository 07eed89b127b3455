/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace snipkit {

class Corpus;
Corpus load_corpus_cache(const std::filesystem::path& path);

using JournalIdx = std::uint32_t;
using PubIdx = std::uint32_t;

struct Journal {
    std::string id;
    std::vector<std::string> titles;
    bool is_trade = false;
    std::vector<std::string> predecessor_ids;
};

struct Publication {
    std::string id;
    JournalIdx journal = 0;
    int year = 0;
    std::string doc_type;
    std::vector<PubIdx> references; // resolved, deduplicated, no self references
};

// Raw input records, before filtering and reference resolution.
struct JournalRecord {
    std::string id;
    std::string title;
    bool is_trade = false;
};

struct PublicationRecord {
    std::string id;
    std::string journal_id;
    int year = 0;
    std::string doc_type;
    std::vector<std::string> references;
    bool refs_missing = false;
};

struct MergePair {
    std::string old_id;
    std::string new_id;
};

struct RecordError {
    std::string file;
    std::size_t line = 0;
    std::string message;
};

struct IngestReport {
    long journals = 0;
    long publications = 0;
    long dropped_doc_type = 0;
    long dropped_no_reference_data = 0;
    long dropped_unknown_journal = 0;
    long refs_unresolved = 0;
    long refs_duplicate = 0;
    long refs_self = 0;
    long merges_applied = 0;
    long merges_skipped = 0;
    std::vector<RecordError> errors;
};

struct CitationEvent {
    PubIdx citing;
    PubIdx cited;
};

// Per-journal membership mask, indexed by JournalIdx.
using JournalMask = std::vector<std::uint8_t>;

// Immutable resolved citation dataset for one year of analysis.
//
// Only publications that pass the document-type allowlist and carry
// reference data enter the corpus; references are resolved to in-corpus
// targets at build time (unresolved, duplicate and self references are
// dropped and counted). The citing window is exactly the year of analysis;
// indicator math uses the three preceding years as the cited window and
// the original subject field extends that to eight years.
class Corpus {
public:
    static constexpr int kCitedWindowYears = 3;
    static constexpr int kSubjectFieldYears = 8;

    Corpus() = default; // empty corpus; build() is the normal entry point

    static const std::set<std::string>& default_doc_types();

    // `report` collects drop counters and per-record errors; a duplicate
    // pub_id is a hard error (the corpus would be ambiguous).
    static Corpus build(int year_of_analysis,
                        std::set<std::string> doc_type_allowlist,
                        const std::vector<JournalRecord>& journals,
                        const std::vector<PublicationRecord>& publications,
                        IngestReport* report = nullptr);

    // Title-change merging: publications of each old journal are
    // re-attributed to its (transitively resolved) successor, which absorbs
    // titles and predecessor ids. A cycle in the map is a hard error.
    // Pairs naming unknown journals are skipped and counted in `report`.
    Corpus merged(const std::vector<MergePair>& merge_map,
                  IngestReport* report = nullptr) const;

    int year_of_analysis() const { return year_; }
    const std::set<std::string>& doc_type_allowlist() const { return doc_types_; }

    std::size_t journal_count() const { return journals_.size(); }
    std::size_t publication_count() const { return publications_.size(); }
    const Journal& journal(JournalIdx j) const { return journals_[j]; }
    const Publication& publication(PubIdx p) const { return publications_[p]; }

    std::optional<JournalIdx> find_journal(std::string_view id) const;
    std::optional<PubIdx> find_publication(std::string_view id) const;

    // Publications of one journal in one calendar year (may be empty).
    const std::vector<PubIdx>& pubs_of(JournalIdx j, int year) const;
    // Number of the journal's publications with year in [from, to].
    long pub_count_in(JournalIdx j, int from_year, int to_year) const;
    // All publications of the year of analysis (the citing side).
    const std::vector<PubIdx>& citing_pubs() const { return citing_pubs_; }
    // Year-of-analysis publications citing `cited` (inverted index).
    const std::vector<PubIdx>& citers_of(PubIdx cited) const { return citers_[cited]; }

    // One event per (citing publication, reference) pair where the citing
    // publication appeared in the year of analysis in a journal from
    // `from`, and the reference targets a publication of `j` in the cited
    // window [Y-3, Y-1].
    std::vector<CitationEvent> citations_received(JournalIdx j, const JournalMask& from) const;
    // Same with an explicit cited-year window (the original subject field
    // uses [Y-8, Y-1]).
    std::vector<CitationEvent> citations_received_window(JournalIdx j, const JournalMask& from,
                                                         int from_year, int to_year) const;

    long total_reference_count() const;

    // Hash of the canonical serialization (entities sorted by id), so two
    // corpora with identical content hash equal regardless of input order.
    std::uint64_t canonical_hash() const;

    // Record-level export, used for merging, file export and corpus
    // extension in experiments. Order follows internal storage order.
    std::vector<JournalRecord> journal_records() const;
    std::vector<PublicationRecord> publication_records() const;

    JournalMask all_journals_mask() const { return JournalMask(journals_.size(), 1); }

private:
    friend Corpus load_corpus_cache(const std::filesystem::path& path);

    void build_indexes();

    int year_ = 0;
    std::set<std::string> doc_types_;
    std::vector<Journal> journals_;
    std::vector<Publication> publications_;
    std::unordered_map<std::string, JournalIdx> journal_by_id_;
    std::unordered_map<std::string, PubIdx> pub_by_id_;
    // per journal: year -> publications
    std::vector<std::map<int, std::vector<PubIdx>>> journal_year_pubs_;
    std::vector<PubIdx> citing_pubs_;
    std::vector<std::vector<PubIdx>> citers_;
};

} // namespace snipkit
