/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "selection.hpp"

#include "error.hpp"
#include "parallel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace snipkit {

const char* to_string(ExclusionReason reason) {
    switch (reason) {
        case ExclusionReason::trade: return "trade";
        case ExclusionReason::not_continuous: return "not_continuous";
        case ExclusionReason::below_active_threshold: return "below_active_threshold";
    }
    return "?";
}

long active_reference_count(const Corpus& corpus, PubIdx pub, const JournalMask& included) {
    const int year = corpus.year_of_analysis();
    long count = 0;
    for (PubIdx target : corpus.publication(pub).references) {
        const Publication& cited = corpus.publication(target);
        if (cited.year >= year - Corpus::kCitedWindowYears && cited.year <= year - 1 &&
            included[cited.journal])
            ++count;
    }
    return count;
}

namespace {

// share as (active, total); avoids rational churn in the iteration loop
std::pair<long, long> cohort_share_counts(const Corpus& corpus, const JournalMask& included,
                                          JournalIdx journal, int year) {
    const auto& cohort = corpus.pubs_of(journal, year);
    long active = 0;
    for (PubIdx pub : cohort)
        if (active_reference_count(corpus, pub, included) > 0) ++active;
    return {active, static_cast<long>(cohort.size())};
}

} // namespace

Rational cohort_active_share(const Corpus& corpus, const JournalMask& included,
                             JournalIdx journal, int year) {
    auto [active, total] = cohort_share_counts(corpus, included, journal, year);
    if (total == 0)
        fail(ErrorKind::invalid,
             "journal '" + corpus.journal(journal).id + "' has no publications in " +
                 std::to_string(year));
    return Rational(active, total);
}

std::vector<JournalIdx> exclude_trade(const Corpus& corpus) {
    std::vector<JournalIdx> out;
    const int year = corpus.year_of_analysis();
    for (JournalIdx j = 0; j < corpus.journal_count(); ++j)
        if (corpus.journal(j).is_trade && !corpus.pubs_of(j, year).empty()) out.push_back(j);
    return out;
}

std::vector<JournalIdx> exclude_noncontinuous(const Corpus& corpus) {
    std::vector<JournalIdx> out;
    const int year = corpus.year_of_analysis();
    for (JournalIdx j = 0; j < corpus.journal_count(); ++j) {
        if (corpus.journal(j).is_trade) continue;
        if (corpus.pubs_of(j, year).empty()) continue;
        for (int y = year - 3; y < year; ++y) {
            if (corpus.pubs_of(j, y).empty()) {
                out.push_back(j);
                break;
            }
        }
    }
    return out;
}

CitingJournalSet select_citing_journals(const Corpus& corpus, const SelectionOptions& options) {
    if (options.threshold <= 0 || options.threshold > 1)
        fail(ErrorKind::invalid, "selection threshold must be in (0, 1]");

    const int year = corpus.year_of_analysis();
    CitingJournalSet set;
    set.year = year;
    set.threshold = options.threshold;
    set.included_mask.assign(corpus.journal_count(), 0);

    std::vector<std::pair<JournalIdx, ExclusionReason>> excluded;
    std::vector<JournalIdx> candidates; // step-3 entrants
    for (JournalIdx j = 0; j < corpus.journal_count(); ++j) {
        if (corpus.pubs_of(j, year).empty()) continue; // outside the selection universe
        if (corpus.journal(j).is_trade) {
            excluded.emplace_back(j, ExclusionReason::trade);
            continue;
        }
        bool continuous = true;
        for (int y = year - 3; y < year && continuous; ++y)
            continuous = !corpus.pubs_of(j, y).empty();
        if (!continuous) {
            excluded.emplace_back(j, ExclusionReason::not_continuous);
            continue;
        }
        set.included_mask[j] = 1;
        candidates.push_back(j);
    }

    // Fixed-point iteration: shares against the current included set,
    // drop strictly-below-threshold journals, repeat until stable.
    std::vector<JournalIdx> active = candidates;
    std::vector<std::pair<long, long>> shares(active.size());
    int round = 0;
    for (;;) {
        ++round;
        if (round > options.max_iterations)
            fail(ErrorKind::internal, "citing-journal selection exceeded " +
                                          std::to_string(options.max_iterations) + " iterations");
        parallel_for(active.size(), options.threads, [&](std::size_t i) {
            shares[i] = cohort_share_counts(corpus, set.included_mask, active[i], year);
        });
        std::vector<JournalIdx> kept;
        bool changed = false;
        for (std::size_t i = 0; i < active.size(); ++i) {
            // included iff share >= threshold ("at least 20%")
            Rational share(shares[i].first, shares[i].second);
            if (share >= options.threshold) {
                kept.push_back(active[i]);
            } else {
                set.included_mask[active[i]] = 0;
                set.excluded_round.emplace_back(active[i], round);
                excluded.emplace_back(active[i], ExclusionReason::below_active_threshold);
                changed = true;
            }
        }
        active = std::move(kept);
        shares.resize(active.size());
        if (!changed) break;
    }
    set.iterations = round;

    auto by_id = [&](JournalIdx a, JournalIdx b) { return corpus.journal(a).id < corpus.journal(b).id; };
    set.included = active;
    std::sort(set.included.begin(), set.included.end(), by_id);
    std::sort(excluded.begin(), excluded.end(),
              [&](const auto& a, const auto& b) { return by_id(a.first, b.first); });
    set.excluded = std::move(excluded);
    std::sort(set.excluded_round.begin(), set.excluded_round.end(),
              [&](const auto& a, const auto& b) { return by_id(a.first, b.first); });

    // Shares of every step-3 entrant against the converged set.
    std::sort(candidates.begin(), candidates.end(), by_id);
    set.active_share.reserve(candidates.size());
    for (JournalIdx j : candidates) {
        auto [a, t] = cohort_share_counts(corpus, set.included_mask, j, year);
        set.active_share.emplace_back(j, Rational(a, t));
    }
    return set;
}

bool selection_round_is_stable(const Corpus& corpus, const CitingJournalSet& set) {
    for (JournalIdx j : set.included) {
        auto [a, t] = cohort_share_counts(corpus, set.included_mask, j, set.year);
        if (Rational(a, t) < set.threshold) return false;
    }
    return true;
}

nlohmann::ordered_json selection_to_json(const Corpus& corpus, const CitingJournalSet& set) {
    nlohmann::ordered_json j;
    j["year"] = set.year;
    j["threshold"] = to_double(set.threshold);
    j["iterations"] = set.iterations;
    auto included = nlohmann::ordered_json::array();
    for (JournalIdx idx : set.included) included.push_back(corpus.journal(idx).id);
    j["included"] = included;
    auto excluded = nlohmann::ordered_json::object();
    for (const auto& [idx, reason] : set.excluded) excluded[corpus.journal(idx).id] = to_string(reason);
    j["excluded"] = excluded;
    auto rounds = nlohmann::ordered_json::object();
    for (const auto& [idx, round] : set.excluded_round) rounds[corpus.journal(idx).id] = round;
    j["excluded_round"] = rounds;
    auto shares = nlohmann::ordered_json::object();
    for (const auto& [idx, share] : set.active_share) shares[corpus.journal(idx).id] = to_double(share);
    j["active_share"] = shares;
    return j;
}

CitingJournalSet selection_from_json(const Corpus& corpus, const nlohmann::json& j) {
    CitingJournalSet set;
    try {
        set.year = j.at("year").get<int>();
        set.iterations = j.value("iterations", 0);
        set.threshold = parse_decimal(nlohmann::json(j.value("threshold", 0.2)).dump());
        set.included_mask.assign(corpus.journal_count(), 0);
        for (const auto& id : j.at("included")) {
            auto idx = corpus.find_journal(id.get<std::string>());
            if (!idx)
                fail(ErrorKind::invalid,
                     "selection names journal '" + id.get<std::string>() + "' not present in the corpus");
            set.included_mask[*idx] = 1;
            set.included.push_back(*idx);
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, std::string("invalid selection JSON: ") + e.what());
    }
    if (set.year != corpus.year_of_analysis())
        fail(ErrorKind::invalid, "selection year does not match the corpus year of analysis");
    std::sort(set.included.begin(), set.included.end(), [&](JournalIdx a, JournalIdx b) {
        return corpus.journal(a).id < corpus.journal(b).id;
    });
    return set;
}

} // namespace snipkit
