/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "indicators.hpp"

#include "csv.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "selection.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace snipkit {

std::optional<Mode> mode_from_string(std::string_view name) {
    if (name == "rip") return Mode::rip;
    if (name == "snip-original") return Mode::snip_original;
    if (name == "snip-revised") return Mode::snip_revised;
    if (name == "audience-factor") return Mode::audience_factor;
    if (name == "fractional-counting") return Mode::fractional_counting;
    if (name == "apriori") return Mode::apriori;
    return std::nullopt;
}

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::rip: return "rip";
        case Mode::snip_original: return "snip-original";
        case Mode::snip_revised: return "snip-revised";
        case Mode::audience_factor: return "audience-factor";
        case Mode::fractional_counting: return "fractional-counting";
        case Mode::apriori: return "apriori";
    }
    return "?";
}

const JournalScore* IndicatorTable::find(std::string_view journal_id) const {
    auto it = std::lower_bound(scores.begin(), scores.end(), journal_id,
                               [](const JournalScore& s, std::string_view id) {
                                   return s.journal_id < id;
                               });
    if (it == scores.end() || it->journal_id != journal_id) return nullptr;
    return &*it;
}

CitingContext CitingContext::build(const Corpus& corpus, const JournalMask& citing, int threads) {
    CitingContext ctx;
    ctx.active_refs.assign(corpus.publication_count(), 0);
    ctx.total_refs.assign(corpus.publication_count(), 0);
    ctx.cohort_share.assign(corpus.journal_count(), std::nullopt);
    ctx.cohort_mean_refs.assign(corpus.journal_count(), std::nullopt);

    const auto& citing_pubs = corpus.citing_pubs();
    parallel_for(citing_pubs.size(), threads, [&](std::size_t i) {
        PubIdx p = citing_pubs[i];
        ctx.active_refs[p] = active_reference_count(corpus, p, citing);
        ctx.total_refs[p] = static_cast<long>(corpus.publication(p).references.size());
    });

    const int year = corpus.year_of_analysis();
    parallel_for(corpus.journal_count(), threads, [&](std::size_t j) {
        const auto& cohort = corpus.pubs_of(static_cast<JournalIdx>(j), year);
        if (cohort.empty()) return;
        long active = 0, refs = 0;
        for (PubIdx p : cohort) {
            if (ctx.active_refs[p] > 0) ++active;
            refs += ctx.active_refs[p];
        }
        ctx.cohort_share[j] = Rational(active, static_cast<long>(cohort.size()));
        ctx.cohort_mean_refs[j] = Rational(refs, static_cast<long>(cohort.size()));
    });
    return ctx;
}

std::optional<Rational> compute_rip(const Corpus& corpus, const JournalMask& citing, JournalIdx j) {
    const int year = corpus.year_of_analysis();
    long m = corpus.pub_count_in(j, year - Corpus::kCitedWindowYears, year - 1);
    if (m == 0) return std::nullopt;
    long n = static_cast<long>(corpus.citations_received(j, citing).size());
    return Rational(n, m);
}

std::vector<SubjectFieldEntry> subject_field_original(const Corpus& corpus, JournalIdx j) {
    const int year = corpus.year_of_analysis();
    JournalMask all = corpus.all_journals_mask();
    auto events = corpus.citations_received_window(j, all, year - Corpus::kSubjectFieldYears, year - 1);

    std::vector<PubIdx> citers;
    citers.reserve(events.size());
    for (const auto& e : events) citers.push_back(e.citing);
    std::sort(citers.begin(), citers.end());
    citers.erase(std::unique(citers.begin(), citers.end()), citers.end());

    std::vector<SubjectFieldEntry> entries;
    entries.reserve(citers.size());
    for (PubIdx c : citers) {
        SubjectFieldEntry entry;
        entry.citing = c;
        entry.r = active_reference_count(corpus, c, all);
        entries.push_back(entry);
    }
    return entries;
}

std::optional<Rational> dcp_original(const std::vector<SubjectFieldEntry>& entries) {
    if (entries.empty()) return std::nullopt;
    BigInt sum = 0;
    for (const auto& e : entries) sum += e.r;
    return Rational(sum, BigInt(entries.size()));
}

std::vector<SubjectFieldEntry> subject_field_revised(const Corpus& corpus, const CitingContext& ctx,
                                                     const JournalMask& citing, JournalIdx j,
                                                     long* zero_r_dropped) {
    auto events = corpus.citations_received(j, citing);
    std::map<PubIdx, long> multiplicity;
    for (const auto& e : events) ++multiplicity[e.citing];

    std::vector<SubjectFieldEntry> entries;
    entries.reserve(multiplicity.size());
    for (const auto& [citer, count] : multiplicity) {
        long r = ctx.active_refs[citer];
        if (r == 0) {
            // possible only when j itself is not a selected citing journal
            if (zero_r_dropped) *zero_r_dropped += count;
            continue;
        }
        SubjectFieldEntry entry;
        entry.citing = citer;
        entry.r = r;
        entry.p = *ctx.cohort_share[corpus.publication(citer).journal];
        entry.multiplicity = count;
        entries.push_back(entry);
    }
    return entries;
}

std::vector<SubjectFieldEntry> subject_field_revised(const Corpus& corpus, const JournalMask& citing,
                                                     JournalIdx j, long* zero_r_dropped) {
    return subject_field_revised(corpus, CitingContext::build(corpus, citing), citing, j,
                                 zero_r_dropped);
}

std::optional<Rational> dcp_revised(const std::vector<SubjectFieldEntry>& entries) {
    if (entries.empty()) return std::nullopt;
    long n = 0;
    Rational inverse_sum = 0;
    for (const auto& e : entries) {
        n += e.multiplicity;
        inverse_sum += Rational(e.multiplicity) / (e.p * e.r);
    }
    return Rational(1, 3) * Rational(n) / inverse_sum;
}

std::optional<Rational> snip_revised(const Corpus& corpus, const JournalMask& citing, JournalIdx j) {
    const int year = corpus.year_of_analysis();
    long m = corpus.pub_count_in(j, year - Corpus::kCitedWindowYears, year - 1);
    if (m == 0) return std::nullopt;
    auto entries = subject_field_revised(corpus, citing, j);
    long n = 0;
    for (const auto& e : entries) n += e.multiplicity;
    if (n == 0) return Rational(0);
    Rational rip(n, m);
    return rip / *dcp_revised(entries);
}

std::optional<Rational> snip_revised_direct(const Corpus& corpus, const JournalMask& citing,
                                            JournalIdx j) {
    const int year = corpus.year_of_analysis();
    long m = corpus.pub_count_in(j, year - Corpus::kCitedWindowYears, year - 1);
    if (m == 0) return std::nullopt;
    Rational sum = 0;
    for (const auto& e : subject_field_revised(corpus, citing, j))
        sum += Rational(e.multiplicity) / (e.p * e.r);
    return Rational(3, m) * sum;
}

namespace {

void score_one(const Corpus& corpus, const CitingContext& ctx, const JournalMask& citing,
               Mode mode, JournalIdx j, JournalScore& score) {
    const int year = corpus.year_of_analysis();
    score.journal_id = corpus.journal(j).id;
    score.m = corpus.pub_count_in(j, year - Corpus::kCitedWindowYears, year - 1);
    score.flags.is_citing_journal = citing[j] != 0;

    switch (mode) {
        case Mode::rip: {
            auto events = corpus.citations_received(j, citing);
            score.n = static_cast<long>(events.size());
            score.rip = Rational(score.n, score.m);
            score.snip = score.rip;
            return;
        }
        case Mode::snip_original: {
            score.n = static_cast<long>(corpus.citations_received(j, citing).size());
            score.rip = Rational(score.n, score.m);
            auto entries = subject_field_original(corpus, j);
            score.dcp = dcp_original(entries);
            // rdcp/snip follow once the table median is known
            return;
        }
        case Mode::snip_revised: {
            auto entries = subject_field_revised(corpus, ctx, citing, j, &score.flags.zero_r_dropped);
            long n = 0;
            for (const auto& e : entries) n += e.multiplicity;
            score.n = n;
            score.rip = Rational(n, score.m);
            score.dcp = dcp_revised(entries);
            score.snip = n == 0 ? Rational(0) : *score.rip / *score.dcp;
            return;
        }
        case Mode::audience_factor:
        case Mode::fractional_counting:
        case Mode::apriori: {
            auto events = corpus.citations_received(j, citing);
            std::map<PubIdx, long> multiplicity;
            for (const auto& e : events) ++multiplicity[e.citing];
            long n = 0;
            Rational sum = 0;
            for (const auto& [citer, count] : multiplicity) {
                Rational weight;
                if (mode == Mode::audience_factor) {
                    const auto& mean = ctx.cohort_mean_refs[corpus.publication(citer).journal];
                    if (!mean || *mean == 0) {
                        score.flags.zero_weight_dropped += count;
                        continue;
                    }
                    weight = 1 / *mean;
                } else if (mode == Mode::fractional_counting) {
                    weight = Rational(1, ctx.total_refs[citer]);
                } else {
                    long r = ctx.active_refs[citer];
                    if (r == 0) {
                        score.flags.zero_r_dropped += count;
                        continue;
                    }
                    weight = Rational(1, r);
                }
                n += count;
                sum += Rational(count) * weight;
            }
            score.n = n;
            score.rip = Rational(n, score.m);
            score.snip = Rational(3, score.m) * sum;
            return;
        }
    }
}

Rational median_of(std::vector<Rational> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2;
}

} // namespace

IndicatorTable compute_table(const Corpus& corpus, const JournalMask& citing, Mode mode,
                             const TableOptions& options) {
    IndicatorTable table;
    table.mode = mode;
    table.year = corpus.year_of_analysis();
    table.notes = options.notes;

    const int year = corpus.year_of_analysis();
    std::vector<JournalIdx> scored;
    for (JournalIdx j = 0; j < corpus.journal_count(); ++j) {
        if (corpus.journal(j).is_trade) continue;
        if (corpus.pub_count_in(j, year - Corpus::kCitedWindowYears, year - 1) == 0) continue;
        scored.push_back(j);
    }
    std::sort(scored.begin(), scored.end(), [&](JournalIdx a, JournalIdx b) {
        return corpus.journal(a).id < corpus.journal(b).id;
    });

    CitingContext ctx = CitingContext::build(corpus, citing, options.threads);
    table.scores.resize(scored.size());
    parallel_for(scored.size(), options.threads, [&](std::size_t i) {
        score_one(corpus, ctx, citing, mode, scored[i], table.scores[i]);
        table.scores[i].flags.below_min_pubs = table.scores[i].m < options.min_pubs;
    });

    if (mode == Mode::snip_original) {
        std::vector<Rational> dcps;
        for (const auto& s : table.scores)
            if (s.dcp) dcps.push_back(*s.dcp);
        if (!dcps.empty()) {
            Rational median = median_of(std::move(dcps));
            if (median == 0)
                fail(ErrorKind::invalid,
                     "median DCP is zero; the corpus is too degenerate for the original indicator");
            table.median_dcp = median;
            for (auto& s : table.scores) {
                if (!s.dcp || !s.rip) continue;
                s.rdcp = *s.dcp / median;
                s.snip = *s.rip / *s.rdcp;
            }
        }
    }

    BigInt weight_all = 0, weight_citing = 0;
    Rational sum_all = 0, sum_citing = 0;
    for (const auto& s : table.scores) {
        if (!s.snip) continue;
        sum_all += *s.snip * s.m;
        weight_all += s.m;
        if (s.flags.is_citing_journal) {
            sum_citing += *s.snip * s.m;
            weight_citing += s.m;
        }
    }
    if (weight_all > 0) table.weighted_mean_snip = sum_all / Rational(weight_all);
    if (weight_citing > 0) table.weighted_mean_snip_citing = sum_citing / Rational(weight_citing);
    return table;
}

namespace {

std::string flags_cell(const ScoreFlags& flags) {
    std::vector<std::string> tokens;
    if (flags.is_citing_journal) tokens.push_back("citing");
    if (flags.below_min_pubs) tokens.push_back("below_min_pubs");
    if (flags.zero_r_dropped) tokens.push_back("zero_r_dropped=" + std::to_string(flags.zero_r_dropped));
    if (flags.zero_weight_dropped)
        tokens.push_back("zero_weight_dropped=" + std::to_string(flags.zero_weight_dropped));
    std::string out;
    for (const auto& t : tokens) out += (out.empty() ? "" : ";") + t;
    return out;
}

ScoreFlags parse_flags_cell(const std::string& cell) {
    ScoreFlags flags;
    std::stringstream ss(cell);
    std::string token;
    while (std::getline(ss, token, ';')) {
        if (token == "citing") flags.is_citing_journal = true;
        else if (token == "below_min_pubs") flags.below_min_pubs = true;
        else if (token.rfind("zero_r_dropped=", 0) == 0) flags.zero_r_dropped = std::stol(token.substr(15));
        else if (token.rfind("zero_weight_dropped=", 0) == 0)
            flags.zero_weight_dropped = std::stol(token.substr(20));
    }
    return flags;
}

std::string cell(const std::optional<Rational>& value) {
    return value ? format_decimal(*value, 4) : std::string();
}

std::optional<Rational> parse_cell(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_decimal(text);
}

} // namespace

std::string write_scores_csv(const IndicatorTable& table) {
    std::string out = "journal_id,mode,m,n,rip,dcp,rdcp,snip,flags\n";
    std::string mode = to_string(table.mode);
    for (const auto& s : table.scores) {
        out += csv_escape(s.journal_id);
        out += ',' + mode;
        out += ',' + std::to_string(s.m);
        out += ',' + std::to_string(s.n);
        out += ',' + cell(s.rip);
        out += ',' + cell(s.dcp);
        out += ',' + cell(s.rdcp);
        out += ',' + cell(s.snip);
        out += ',' + csv_escape(flags_cell(s.flags));
        out += '\n';
    }
    return out;
}

IndicatorTable read_scores_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        csv_split(line) != std::vector<std::string>{"journal_id", "mode", "m", "n",
                                                    "rip", "dcp", "rdcp", "snip", "flags"})
        fail(ErrorKind::parse, "not a scores.csv file (bad header)");

    IndicatorTable table;
    bool mode_set = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = csv_split(line);
        if (fields.size() != 9)
            fail(ErrorKind::parse, "scores.csv line " + std::to_string(line_no) + ": bad field count");
        auto mode = mode_from_string(fields[1]);
        if (!mode)
            fail(ErrorKind::parse, "scores.csv line " + std::to_string(line_no) + ": unknown mode '" +
                                       fields[1] + "'");
        if (!mode_set) {
            table.mode = *mode;
            mode_set = true;
        } else if (*mode != table.mode) {
            fail(ErrorKind::parse, "scores.csv mixes indicator modes");
        }
        try {
            JournalScore s;
            s.journal_id = fields[0];
            s.m = std::stol(fields[2]);
            s.n = std::stol(fields[3]);
            s.rip = parse_cell(fields[4]);
            s.dcp = parse_cell(fields[5]);
            s.rdcp = parse_cell(fields[6]);
            s.snip = parse_cell(fields[7]);
            s.flags = parse_flags_cell(fields[8]);
            table.scores.push_back(std::move(s));
        } catch (const std::exception&) {
            fail(ErrorKind::parse, "scores.csv line " + std::to_string(line_no) + ": bad value");
        }
    }
    std::sort(table.scores.begin(), table.scores.end(),
              [](const JournalScore& a, const JournalScore& b) { return a.journal_id < b.journal_id; });

    BigInt weight = 0;
    Rational sum = 0;
    for (const auto& s : table.scores) {
        if (!s.snip) continue;
        sum += *s.snip * s.m;
        weight += s.m;
    }
    if (weight > 0) table.weighted_mean_snip = sum / Rational(weight);
    return table;
}

} // namespace snipkit
