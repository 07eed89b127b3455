/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "support/fixtures.hpp"

#include "csv.hpp"
#include "error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

namespace snipkit::fixtures {

namespace {

PublicationRecord pub(std::string id, std::string journal, int year,
                      std::vector<std::string> refs = {}) {
    PublicationRecord rec;
    rec.id = std::move(id);
    rec.journal_id = std::move(journal);
    rec.year = year;
    rec.doc_type = "article";
    rec.references = std::move(refs);
    return rec;
}

// window publications spread over 2007..2009 and one year-2010 publication
// citing an anchor, so the journal passes selection with share 1
void add_regular_journal(RecordSet& set, const std::string& id, int window_pubs,
                         const std::string& anchor_ref) {
    set.journals.push_back({id, id, false});
    int per_year = window_pubs / 3;
    int extra = window_pubs % 3;
    int counter = 0;
    for (int t = 0; t < 3; ++t) {
        int count = per_year + (t < extra ? 1 : 0);
        for (int i = 0; i < count; ++i)
            set.publications.push_back(pub(id + "-W" + std::to_string(++counter), id, 2007 + t));
    }
    set.publications.push_back(pub(id + "-S", id, 2010, {anchor_ref}));
}

std::vector<std::string> window_ids(const std::string& journal, int from, int to) {
    std::vector<std::string> ids;
    for (int i = from; i <= to; ++i) ids.push_back(journal + "-W" + std::to_string(i));
    return ids;
}

} // namespace

Corpus RecordSet::build(int year) const {
    return Corpus::build(year, Corpus::default_doc_types(), journals, publications, nullptr);
}

Corpus RecordSet::build_merged(int year) const {
    return build(year).merged(merges, nullptr);
}

void RecordSet::write(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    {
        std::ofstream out(fs::path(dir) / "journals.csv");
        out << "journal_id,title,is_trade\n";
        for (const auto& j : journals)
            out << csv_escape(j.id) << ',' << csv_escape(j.title) << ',' << (j.is_trade ? 1 : 0)
                << '\n';
    }
    {
        std::ofstream out(fs::path(dir) / "publications.jsonl");
        for (const auto& p : publications) {
            nlohmann::ordered_json obj;
            obj["pub_id"] = p.id;
            obj["journal_id"] = p.journal_id;
            obj["year"] = p.year;
            obj["doc_type"] = p.doc_type;
            obj["references"] = p.references;
            if (p.refs_missing) obj["refs_missing"] = true;
            out << obj.dump() << '\n';
        }
    }
    if (!merges.empty()) {
        std::ofstream out(fs::path(dir) / "merges.csv");
        out << "old_journal_id,new_journal_id\n";
        for (const auto& m : merges) out << m.old_id << ',' << m.new_id << '\n';
    }
}

RecordSet merger_example() {
    RecordSet set;
    const std::string anchor = "JC-W3";

    set.journals.push_back({"JC", "JC", false});
    for (int t = 0; t < 3; ++t)
        set.publications.push_back(pub("JC-W" + std::to_string(t + 1), "JC", 2007 + t));

    add_regular_journal(set, "JX", 10, anchor);
    add_regular_journal(set, "JY", 10, anchor);
    add_regular_journal(set, "JF1", 11, anchor);
    add_regular_journal(set, "JF2", 3, anchor);
    add_regular_journal(set, "JF3", 3, anchor);

    // 120 publications citing JX once, each with 6 active references
    for (int i = 0; i < 120; ++i) {
        auto refs = window_ids("JF1", 1, 5);
        refs.insert(refs.begin(), "JX-W" + std::to_string(i % 10 + 1));
        set.publications.push_back(pub("CX-" + std::to_string(i + 1), "JC", 2010, refs));
    }
    // 240 publications citing JY once, each with 12 active references
    for (int i = 0; i < 240; ++i) {
        auto refs = window_ids("JF1", 1, 11);
        refs.insert(refs.begin(), "JY-W" + std::to_string(i % 10 + 1));
        set.publications.push_back(pub("CY-" + std::to_string(i + 1), "JC", 2010, refs));
    }
    // 1260 single-reference publications keep JF1's mean at exactly 3
    for (int i = 0; i < 1260; ++i)
        set.publications.push_back(pub("CB-" + std::to_string(i + 1), "JC", 2010, {"JF1-W1"}));
    // one three-reference publication per small filler pins its DCP at 3
    set.publications.push_back(pub("CF2", "JC", 2010, window_ids("JF2", 1, 3)));
    set.publications.push_back(pub("CF3", "JC", 2010, window_ids("JF3", 1, 3)));

    set.merges.push_back({"JY", "JX"});
    return set;
}

RecordSet counterexample(bool extra_citation) {
    RecordSet set;
    const std::string anchor = "JC-W3";

    set.journals.push_back({"JC", "JC", false});
    for (int t = 0; t < 3; ++t)
        set.publications.push_back(pub("JC-W" + std::to_string(t + 1), "JC", 2007 + t));

    add_regular_journal(set, "JJ", 10, anchor);
    add_regular_journal(set, "JG1", 99, anchor);
    for (int g = 2; g <= 5; ++g) add_regular_journal(set, "JG" + std::to_string(g), 3, anchor);

    // 80 publications citing JJ once, each with 4 active references
    for (int i = 0; i < 80; ++i) {
        auto refs = window_ids("JG1", 1, 3);
        refs.insert(refs.begin(), "JJ-W" + std::to_string(i % 10 + 1));
        set.publications.push_back(pub("CJ-" + std::to_string(i + 1), "JC", 2010, refs));
    }
    // 160 single-reference publications keep JG1's mean at exactly 2
    for (int i = 0; i < 160; ++i)
        set.publications.push_back(pub("CB-" + std::to_string(i + 1), "JC", 2010, {"JG1-W1"}));
    // two-reference publications pin the small fillers at DCP 2
    for (int g = 2; g <= 5; ++g) {
        auto journal = "JG" + std::to_string(g);
        set.publications.push_back(
            pub("CG" + std::to_string(g), "JC", 2010, window_ids(journal, 1, 2)));
    }
    if (extra_citation) {
        // the long-reference-list citer: 1 reference to JJ plus 99 more
        auto refs = window_ids("JG1", 1, 99);
        refs.insert(refs.begin(), "JJ-W1");
        set.publications.push_back(pub("CJX", "JC", 2010, refs));
    }
    return set;
}

RecordSet cascading_selection() {
    RecordSet set;
    auto add_years = [&](const std::string& id) {
        for (int t = 0; t < 3; ++t)
            set.publications.push_back(pub(id + "-0" + std::to_string(7 + t), id, 2007 + t));
    };

    set.journals.push_back({"SA", "SA", true}); // trade
    add_years("SA");
    set.publications.push_back(pub("SA-10", "SA", 2010, {"SA-09"}));

    set.journals.push_back({"SB", "SB", false});
    add_years("SB");
    set.publications.push_back(pub("SB-10", "SB", 2010, {"SA-09", "SA-08"}));

    set.journals.push_back({"SC", "SC", false});
    add_years("SC");
    set.publications.push_back(pub("SC-10", "SC", 2010, {"SB-09", "SB-08"}));

    set.journals.push_back({"SD", "SD", false});
    add_years("SD");
    set.publications.push_back(pub("SD-10a", "SD", 2010, {"SD-09"}));
    set.publications.push_back(pub("SD-10b", "SD", 2010));

    // exactly one of five publications has an active reference: share 0.20
    set.journals.push_back({"SE", "SE", false});
    add_years("SE");
    set.publications.push_back(pub("SE-10a", "SE", 2010, {"SD-09"}));
    for (char c = 'b'; c <= 'e'; ++c)
        set.publications.push_back(pub(std::string("SE-10") + c, "SE", 2010));

    return set;
}

RecordSet small_random(unsigned seed, int journals, int pubs_per_year, int max_refs) {
    std::mt19937 rng(seed);
    RecordSet set;
    std::vector<std::string> window_pool;
    for (int j = 0; j < journals; ++j) {
        std::string id = "R" + std::to_string(j + 1);
        set.journals.push_back({id, id, false});
        for (int year = 2007; year <= 2009; ++year)
            for (int i = 0; i < pubs_per_year; ++i) {
                std::string pid = id + "-" + std::to_string(year) + "-" + std::to_string(i + 1);
                set.publications.push_back(pub(pid, id, year));
                window_pool.push_back(pid);
            }
    }
    for (int j = 0; j < journals; ++j) {
        std::string id = "R" + std::to_string(j + 1);
        for (int i = 0; i < pubs_per_year; ++i) {
            int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_refs));
            std::vector<std::string> refs;
            while (static_cast<int>(refs.size()) < k) {
                const std::string& target = window_pool[rng() % window_pool.size()];
                if (std::find(refs.begin(), refs.end(), target) == refs.end())
                    refs.push_back(target);
            }
            set.publications.push_back(
                pub(id + "-2010-" + std::to_string(i + 1), id, 2010, refs));
        }
    }
    return set;
}

} // namespace snipkit::fixtures
