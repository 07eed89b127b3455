/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "corpus.hpp"

#include "error.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace snipkit {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

class Fnv1a {
public:
    void add(std::string_view bytes) {
        for (unsigned char c : bytes) {
            hash_ ^= c;
            hash_ *= 0x100000001b3ULL;
        }
    }
    void add(long v) { add(std::to_string(v)); add("|"); }
    void add_field(std::string_view s) { add(s); add("|"); }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace

const std::set<std::string>& Corpus::default_doc_types() {
    static const std::set<std::string> kTypes{"article", "conference paper", "review"};
    return kTypes;
}

Corpus Corpus::build(int year_of_analysis,
                     std::set<std::string> doc_type_allowlist,
                     const std::vector<JournalRecord>& journal_records,
                     const std::vector<PublicationRecord>& publication_records,
                     IngestReport* report) {
    IngestReport local;
    IngestReport& stats = report ? *report : local;

    Corpus corpus;
    corpus.year_ = year_of_analysis;
    for (const auto& t : doc_type_allowlist) corpus.doc_types_.insert(lowercase(t));
    if (corpus.doc_types_.empty()) corpus.doc_types_ = default_doc_types();

    for (const auto& rec : journal_records) {
        if (rec.id.empty()) {
            stats.errors.push_back({"journals", 0, "journal record with empty id"});
            continue;
        }
        if (corpus.journal_by_id_.count(rec.id)) {
            stats.errors.push_back({"journals", 0, "duplicate journal_id '" + rec.id + "'"});
            continue;
        }
        Journal j;
        j.id = rec.id;
        if (!rec.title.empty()) j.titles.push_back(rec.title);
        j.is_trade = rec.is_trade;
        corpus.journal_by_id_.emplace(j.id, static_cast<JournalIdx>(corpus.journals_.size()));
        corpus.journals_.push_back(std::move(j));
    }
    stats.journals = static_cast<long>(corpus.journals_.size());

    // Pass 1: filter publications. pub_id uniqueness is checked over all
    // input records, dropped or not.
    std::unordered_set<std::string> seen_ids;
    std::vector<const PublicationRecord*> kept;
    kept.reserve(publication_records.size());
    for (const auto& rec : publication_records) {
        if (rec.id.empty()) {
            stats.errors.push_back({"publications", 0, "publication record with empty pub_id"});
            continue;
        }
        if (!seen_ids.insert(rec.id).second)
            fail(ErrorKind::invalid, "duplicate pub_id '" + rec.id + "'");
        auto journal_it = corpus.journal_by_id_.find(rec.journal_id);
        if (journal_it == corpus.journal_by_id_.end()) {
            ++stats.dropped_unknown_journal;
            continue;
        }
        if (!corpus.doc_types_.count(lowercase(rec.doc_type))) {
            ++stats.dropped_doc_type;
            continue;
        }
        if (rec.refs_missing) {
            ++stats.dropped_no_reference_data;
            continue;
        }
        Publication pub;
        pub.id = rec.id;
        pub.journal = journal_it->second;
        pub.year = rec.year;
        pub.doc_type = lowercase(rec.doc_type);
        corpus.pub_by_id_.emplace(pub.id, static_cast<PubIdx>(corpus.publications_.size()));
        corpus.publications_.push_back(std::move(pub));
        kept.push_back(&rec);
    }
    stats.publications = static_cast<long>(corpus.publications_.size());

    // Pass 2: resolve references against the filtered corpus.
    for (std::size_t i = 0; i < kept.size(); ++i) {
        Publication& pub = corpus.publications_[i];
        std::unordered_set<PubIdx> targets;
        for (const std::string& ref : kept[i]->references) {
            auto it = corpus.pub_by_id_.find(ref);
            if (it == corpus.pub_by_id_.end()) {
                ++stats.refs_unresolved;
                continue;
            }
            if (it->second == static_cast<PubIdx>(i)) {
                ++stats.refs_self;
                continue;
            }
            if (!targets.insert(it->second).second) {
                ++stats.refs_duplicate;
                continue;
            }
            pub.references.push_back(it->second);
        }
    }

    corpus.build_indexes();
    return corpus;
}

void Corpus::build_indexes() {
    journal_year_pubs_.assign(journals_.size(), {});
    citers_.assign(publications_.size(), {});
    citing_pubs_.clear();
    for (PubIdx p = 0; p < publications_.size(); ++p) {
        const Publication& pub = publications_[p];
        journal_year_pubs_[pub.journal][pub.year].push_back(p);
        if (pub.year == year_) citing_pubs_.push_back(p);
    }
    for (PubIdx citing : citing_pubs_)
        for (PubIdx cited : publications_[citing].references)
            citers_[cited].push_back(citing);
}

std::optional<JournalIdx> Corpus::find_journal(std::string_view id) const {
    auto it = journal_by_id_.find(std::string(id));
    if (it == journal_by_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<PubIdx> Corpus::find_publication(std::string_view id) const {
    auto it = pub_by_id_.find(std::string(id));
    if (it == pub_by_id_.end()) return std::nullopt;
    return it->second;
}

const std::vector<PubIdx>& Corpus::pubs_of(JournalIdx j, int year) const {
    static const std::vector<PubIdx> kEmpty;
    const auto& by_year = journal_year_pubs_[j];
    auto it = by_year.find(year);
    return it == by_year.end() ? kEmpty : it->second;
}

long Corpus::pub_count_in(JournalIdx j, int from_year, int to_year) const {
    long count = 0;
    const auto& by_year = journal_year_pubs_[j];
    for (auto it = by_year.lower_bound(from_year); it != by_year.end() && it->first <= to_year; ++it)
        count += static_cast<long>(it->second.size());
    return count;
}

std::vector<CitationEvent> Corpus::citations_received(JournalIdx j, const JournalMask& from) const {
    return citations_received_window(j, from, year_ - kCitedWindowYears, year_ - 1);
}

std::vector<CitationEvent> Corpus::citations_received_window(JournalIdx j, const JournalMask& from,
                                                             int from_year, int to_year) const {
    if (j >= journals_.size()) fail(ErrorKind::invalid, "unknown journal index");
    std::vector<CitationEvent> events;
    const auto& by_year = journal_year_pubs_[j];
    for (auto it = by_year.lower_bound(from_year); it != by_year.end() && it->first <= to_year; ++it) {
        for (PubIdx cited : it->second) {
            for (PubIdx citing : citers_[cited]) {
                if (from[publications_[citing].journal]) events.push_back({citing, cited});
            }
        }
    }
    return events;
}

long Corpus::total_reference_count() const {
    long total = 0;
    for (const auto& pub : publications_) total += static_cast<long>(pub.references.size());
    return total;
}

std::uint64_t Corpus::canonical_hash() const {
    Fnv1a h;
    h.add_field("snipkit-corpus-v1");
    h.add(static_cast<long>(year_));
    for (const auto& t : doc_types_) h.add_field(t);

    std::vector<JournalIdx> journals(journals_.size());
    for (JournalIdx i = 0; i < journals.size(); ++i) journals[i] = i;
    std::sort(journals.begin(), journals.end(), [&](JournalIdx a, JournalIdx b) {
        return journals_[a].id < journals_[b].id;
    });
    for (JournalIdx j : journals) {
        const Journal& journal = journals_[j];
        h.add_field(journal.id);
        for (const auto& t : journal.titles) h.add_field(t);
        h.add(journal.is_trade ? 1 : 0);
        std::vector<std::string> preds = journal.predecessor_ids;
        std::sort(preds.begin(), preds.end());
        for (const auto& p : preds) h.add_field(p);
    }

    std::vector<PubIdx> pubs(publications_.size());
    for (PubIdx i = 0; i < pubs.size(); ++i) pubs[i] = i;
    std::sort(pubs.begin(), pubs.end(), [&](PubIdx a, PubIdx b) {
        return publications_[a].id < publications_[b].id;
    });
    for (PubIdx p : pubs) {
        const Publication& pub = publications_[p];
        h.add_field(pub.id);
        h.add_field(journals_[pub.journal].id);
        h.add(pub.year);
        h.add_field(pub.doc_type);
        std::vector<std::string> refs;
        refs.reserve(pub.references.size());
        for (PubIdx r : pub.references) refs.push_back(publications_[r].id);
        std::sort(refs.begin(), refs.end());
        for (const auto& r : refs) h.add_field(r);
    }
    return h.value();
}

std::vector<JournalRecord> Corpus::journal_records() const {
    std::vector<JournalRecord> records;
    records.reserve(journals_.size());
    for (const auto& j : journals_)
        records.push_back({j.id, j.titles.empty() ? std::string() : j.titles.front(), j.is_trade});
    return records;
}

std::vector<PublicationRecord> Corpus::publication_records() const {
    std::vector<PublicationRecord> records;
    records.reserve(publications_.size());
    for (const auto& p : publications_) {
        PublicationRecord rec;
        rec.id = p.id;
        rec.journal_id = journals_[p.journal].id;
        rec.year = p.year;
        rec.doc_type = p.doc_type;
        rec.references.reserve(p.references.size());
        for (PubIdx r : p.references) rec.references.push_back(publications_[r].id);
        records.push_back(std::move(rec));
    }
    return records;
}

Corpus Corpus::merged(const std::vector<MergePair>& merge_map, IngestReport* report) const {
    IngestReport local;
    IngestReport& stats = report ? *report : local;

    // Successor map with duplicate-source detection.
    std::map<std::string, std::string> successor;
    for (const auto& pair : merge_map) {
        auto it = successor.find(pair.old_id);
        if (it != successor.end()) {
            if (it->second != pair.new_id)
                fail(ErrorKind::invalid, "conflicting merge targets for journal '" + pair.old_id + "'");
            continue;
        }
        successor.emplace(pair.old_id, pair.new_id);
    }

    // Resolve chains transitively; report cycles with the offending path.
    auto resolve = [&](const std::string& start) {
        std::string current = start;
        std::vector<std::string> path{current};
        std::unordered_set<std::string> visited{current};
        for (;;) {
            auto it = successor.find(current);
            if (it == successor.end()) return current;
            current = it->second;
            if (!visited.insert(current).second) {
                std::string cycle;
                for (const auto& s : path) cycle += s + " -> ";
                cycle += current;
                fail(ErrorKind::invalid, "merge map contains a cycle: " + cycle);
            }
            path.push_back(current);
        }
    };

    std::unordered_map<std::string, std::string> resolved;
    for (const auto& [old_id, unused] : successor) {
        (void)unused;
        std::string target = resolve(old_id);
        if (!journal_by_id_.count(old_id) || !journal_by_id_.count(target)) {
            stats.errors.push_back({"merges", 0,
                                    "merge " + old_id + " -> " + target + " names an unknown journal"});
            ++stats.merges_skipped;
            continue;
        }
        resolved.emplace(old_id, target);
        ++stats.merges_applied;
    }

    // Rebuild records with re-attributed publications and absorbed titles.
    std::vector<JournalRecord> journal_recs;
    std::unordered_map<std::string, Journal> absorbed; // successor id -> extra metadata
    for (const auto& j : journals_) {
        auto it = resolved.find(j.id);
        if (it == resolved.end()) continue;
        Journal& target = absorbed[it->second];
        for (const auto& t : j.titles) target.titles.push_back(t);
        target.predecessor_ids.push_back(j.id);
        for (const auto& p : j.predecessor_ids) target.predecessor_ids.push_back(p);
    }
    for (const auto& j : journals_) {
        if (resolved.count(j.id)) continue;
        journal_recs.push_back({j.id, j.titles.empty() ? std::string() : j.titles.front(), j.is_trade});
    }

    std::vector<PublicationRecord> pub_recs = publication_records();
    for (auto& rec : pub_recs) {
        auto it = resolved.find(rec.journal_id);
        if (it != resolved.end()) rec.journal_id = it->second;
    }

    Corpus result = build(year_, doc_types_, journal_recs, pub_recs, nullptr);
    for (auto& journal : result.journals_) {
        const auto& j = journals_[journal_by_id_.at(journal.id)];
        journal.titles = j.titles;
        journal.predecessor_ids = j.predecessor_ids;
        auto it = absorbed.find(journal.id);
        if (it == absorbed.end()) continue;
        for (const auto& t : it->second.titles)
            if (std::find(journal.titles.begin(), journal.titles.end(), t) == journal.titles.end())
                journal.titles.push_back(t);
        for (const auto& p : it->second.predecessor_ids)
            journal.predecessor_ids.push_back(p);
    }
    return result;
}

} // namespace snipkit
