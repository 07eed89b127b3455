/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "synthlab.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace snipkit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// mt19937_64 with hand-rolled draws so that generated corpora do not
// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) {
        // unbiased modulo rejection
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
        for (;;) {
            std::uint64_t x = engine_();
            if (x < limit) return x % n;
        }
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

// k distinct indices from [0, pool_size)
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t pool_size, std::size_t k) {
    if (k > pool_size) fail(ErrorKind::invalid, "reference demand exceeds the available target pool");
    if (k * 2 >= pool_size) {
        std::vector<std::size_t> indices(pool_size);
        for (std::size_t i = 0; i < pool_size; ++i) indices[i] = i;
        for (std::size_t i = 0; i < k; ++i)
            std::swap(indices[i], indices[i + rng.below(pool_size - i)]);
        indices.resize(k);
        return indices;
    }
    std::unordered_set<std::size_t> seen;
    std::vector<std::size_t> out;
    out.reserve(k);
    while (out.size() < k) {
        std::size_t candidate = rng.below(pool_size);
        if (seen.insert(candidate).second) out.push_back(candidate);
    }
    return out;
}

long positive_draw(Rng& rng, const RefCountDist& dist, double positive_total) {
    double u = rng.unit() * positive_total;
    double acc = 0;
    long last = 1;
    for (std::size_t i = 0; i < dist.values.size(); ++i) {
        if (dist.values[i] <= 0 || dist.weights[i] <= 0) continue;
        acc += dist.weights[i];
        last = dist.values[i];
        if (u < acc) return dist.values[i];
    }
    return last;
}

void validate(const SynthSpec& spec) {
    if (spec.fields.empty()) fail(ErrorKind::invalid, "synthetic spec has no fields");
    for (const auto& field : spec.fields) {
        if (field.n_cited_journals < 1) fail(ErrorKind::invalid, "field needs at least one cited journal");
        if (field.n_citing_journals < 1)
            fail(ErrorKind::invalid, "field needs at least one citing journal");
        if (spec.coincide && field.n_cited_journals != field.n_citing_journals)
            fail(ErrorKind::invalid,
                 "coinciding journal sets require n_cited_journals == n_citing_journals");
        if (field.pubs_per_year.size() != 4)
            fail(ErrorKind::invalid, "pubs_per_year must cover four years");
        for (long c : field.pubs_per_year)
            if (c < 1) fail(ErrorKind::invalid, "publication counts must be positive");
        if (field.ref_counts.values.size() != field.ref_counts.weights.size() ||
            field.ref_counts.values.empty())
            fail(ErrorKind::invalid, "reference-count distribution is malformed");
        double positive = 0;
        for (std::size_t i = 0; i < field.ref_counts.values.size(); ++i) {
            if (field.ref_counts.values[i] < 0 || field.ref_counts.weights[i] < 0)
                fail(ErrorKind::invalid, "reference-count distribution is malformed");
            if (field.ref_counts.values[i] > 0) positive += field.ref_counts.weights[i];
        }
        double total = positive;
        for (std::size_t i = 0; i < field.ref_counts.values.size(); ++i)
            if (field.ref_counts.values[i] == 0) total += field.ref_counts.weights[i];
        if (total <= 0) fail(ErrorKind::invalid, "reference-count distribution has no mass");
        if (field.cross_field_fraction < 0 || field.cross_field_fraction > 1)
            fail(ErrorKind::invalid, "cross_field_fraction must be in [0, 1]");
        if (field.cross_field_fraction > 0 && spec.fields.size() < 2)
            fail(ErrorKind::invalid, "cross-field references need at least two fields");
    }
}

std::string journal_name(const std::string& field, const char* role, long index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "-%s%03ld", role, index + 1);
    return field + buf;
}

} // namespace

SynthSpec parse_synth_spec(const json& j) {
    SynthSpec spec;
    try {
        spec.year_of_analysis = j.value("year_of_analysis", 2010);
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.coincide = j.value("coincide", true);
        for (const auto& f : j.at("fields")) {
            FieldSpec field;
            field.name = f.value("name", "F" + std::to_string(spec.fields.size() + 1));
            field.n_cited_journals = f.at("n_cited_journals").get<long>();
            field.n_citing_journals = f.value("n_citing_journals", field.n_cited_journals);
            field.growth_factor = f.value("growth_factor", 1.0);
            const auto& pubs = f.at("pubs_per_journal_per_year");
            if (pubs.is_array()) {
                if (field.growth_factor != 1.0)
                    fail(ErrorKind::invalid,
                         "per-year publication counts and growth_factor are exclusive");
                for (const auto& c : pubs) field.pubs_per_year.push_back(c.get<long>());
            } else {
                long base = pubs.get<long>();
                for (int t = 0; t < 4; ++t)
                    field.pubs_per_year.push_back(
                        std::lround(base * std::pow(field.growth_factor, t)));
            }
            const auto& dist = f.at("ref_count_distribution");
            field.ref_counts.values = dist.at("values").get<std::vector<long>>();
            field.ref_counts.weights = dist.at("weights").get<std::vector<double>>();
            field.cross_field_fraction = f.value("cross_field_fraction", 0.0);
            spec.fields.push_back(std::move(field));
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::parse, std::string("invalid synthetic spec: ") + e.what());
    }
    validate(spec);
    return spec;
}

SynthSpec parse_synth_spec_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::parse, "synthetic spec is not valid JSON");
    return parse_synth_spec(j);
}

SynthCorpus generate(const SynthSpec& spec) {
    validate(spec);
    const int year = spec.year_of_analysis;
    Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);

    SynthCorpus out;
    out.spec = spec;

    struct FieldState {
        std::vector<std::string> cited_pool;  // pub ids in the cited window
        std::vector<std::string> citing_ids;  // journals that cite
    };
    std::vector<FieldState> states(spec.fields.size());
    std::vector<JournalRecord> journals;
    std::vector<PublicationRecord> pubs;

    // Journals and publications first, so reference pools are complete
    // before any draw.
    for (std::size_t f = 0; f < spec.fields.size(); ++f) {
        const FieldSpec& field = spec.fields[f];
        FieldState& state = states[f];

        auto add_journal = [&](const std::string& id) {
            journals.push_back({id, id, false});
            out.field_of_journal[id] = field.name;
        };
        auto add_pubs = [&](const std::string& journal_id, int pub_year, long count,
                            bool into_pool) {
            for (long i = 0; i < count; ++i) {
                PublicationRecord rec;
                rec.id = journal_id + "-" + std::to_string(pub_year) + "-" + std::to_string(i + 1);
                rec.journal_id = journal_id;
                rec.year = pub_year;
                rec.doc_type = "article";
                pubs.push_back(std::move(rec));
                if (into_pool) state.cited_pool.push_back(pubs.back().id);
            }
        };

        if (spec.coincide) {
            for (long k = 0; k < field.n_cited_journals; ++k) {
                std::string id = journal_name(field.name, "J", k);
                add_journal(id);
                state.citing_ids.push_back(id);
                for (int t = 0; t < 4; ++t)
                    add_pubs(id, year - 3 + t, field.pubs_per_year[t], t < 3);
            }
        } else {
            for (long k = 0; k < field.n_cited_journals; ++k) {
                std::string id = journal_name(field.name, "D", k);
                add_journal(id);
                for (int t = 0; t < 3; ++t)
                    add_pubs(id, year - 3 + t, field.pubs_per_year[t], true);
            }
            for (long k = 0; k < field.n_citing_journals; ++k) {
                std::string id = journal_name(field.name, "G", k);
                add_journal(id);
                state.citing_ids.push_back(id);
                add_pubs(id, year, field.pubs_per_year[3], false);
            }
        }
    }

    // Cross-field pools: all other fields' cited publications.
    std::vector<std::vector<const std::string*>> other_pools(spec.fields.size());
    for (std::size_t f = 0; f < spec.fields.size(); ++f)
        for (std::size_t g = 0; g < spec.fields.size(); ++g) {
            if (g == f) continue;
            for (const auto& id : states[g].cited_pool) other_pools[f].push_back(&id);
        }

    // References for year-of-analysis publications of citing journals.
    std::unordered_map<std::string, std::size_t> pub_index;
    for (std::size_t i = 0; i < pubs.size(); ++i) pub_index[pubs[i].id] = i;

    for (std::size_t f = 0; f < spec.fields.size(); ++f) {
        const FieldSpec& field = spec.fields[f];
        FieldState& state = states[f];

        double zero_mass = 0, total_mass = 0;
        for (std::size_t i = 0; i < field.ref_counts.values.size(); ++i) {
            total_mass += field.ref_counts.weights[i];
            if (field.ref_counts.values[i] == 0) zero_mass += field.ref_counts.weights[i];
        }
        double zero_fraction = zero_mass / total_mass;
        double positive_total = total_mass - zero_mass;

        for (const auto& journal_id : state.citing_ids) {
            long cohort = field.pubs_per_year[3];
            long zero_count = std::lround(zero_fraction * cohort);
            if (zero_fraction < 1.0) zero_count = std::min(zero_count, cohort - 1);
            long with_refs = cohort - zero_count;

            for (long i = 0; i < with_refs; ++i) {
                std::string pub_id =
                    journal_id + "-" + std::to_string(year) + "-" + std::to_string(i + 1);
                PublicationRecord& rec = pubs[pub_index.at(pub_id)];
                long k = positive_draw(rng, field.ref_counts, positive_total);

                long k_cross = 0;
                if (field.cross_field_fraction > 0)
                    for (long r = 0; r < k; ++r)
                        if (rng.unit() < field.cross_field_fraction) ++k_cross;
                long k_own = k - k_cross;

                if (static_cast<std::size_t>(k_own) > state.cited_pool.size() ||
                    static_cast<std::size_t>(k_cross) > other_pools[f].size())
                    fail(ErrorKind::invalid,
                         "reference demand exceeds the available target pool in field '" +
                             field.name + "'");
                for (std::size_t idx : sample_distinct(rng, state.cited_pool.size(),
                                                       static_cast<std::size_t>(k_own)))
                    rec.references.push_back(state.cited_pool[idx]);
                for (std::size_t idx : sample_distinct(rng, other_pools[f].size(),
                                                       static_cast<std::size_t>(k_cross)))
                    rec.references.push_back(*other_pools[f][idx]);
            }
        }
    }

    out.corpus = Corpus::build(year, Corpus::default_doc_types(), journals, pubs, nullptr);
    // the activeness universe spans all generated journals; with split
    // sets the cited journals never publish in the year of analysis, so
    // the real selection would exclude them and no reference could count
    // as active
    out.intended_citing.assign(out.corpus.journal_count(), 1);
    return out;
}

std::map<std::string, Rational> mu_per_field(
    const Corpus& corpus, const JournalMask& citing,
    const std::map<std::string, std::string>& field_of_journal) {
    IndicatorTable table = compute_table(corpus, citing, Mode::snip_revised);
    std::map<std::string, Rational> weighted;
    std::map<std::string, BigInt> weight;
    for (const auto& score : table.scores) {
        auto it = field_of_journal.find(score.journal_id);
        if (it == field_of_journal.end())
            fail(ErrorKind::invalid, "journal '" + score.journal_id + "' has no field assignment");
        if (!score.snip) continue;
        weighted[it->second] += *score.snip * score.m;
        weight[it->second] += score.m;
    }
    std::map<std::string, Rational> mu;
    for (auto& [field, sum] : weighted)
        if (weight[field] > 0) mu[field] = sum / Rational(weight[field]);
    return mu;
}

Rational brute_force_snip(const Corpus& corpus, const JournalMask& citing, JournalIdx journal) {
    const int year = corpus.year_of_analysis();
    const int lo = year - 3, hi = year - 1;

    auto in_window_of = [&](PubIdx target, JournalIdx owner) {
        const Publication& pub = corpus.publication(target);
        return pub.journal == owner && pub.year >= lo && pub.year <= hi;
    };
    auto is_active = [&](PubIdx target) {
        const Publication& pub = corpus.publication(target);
        return pub.year >= lo && pub.year <= hi && citing[pub.journal];
    };

    long m = 0;
    for (PubIdx p = 0; p < corpus.publication_count(); ++p)
        if (in_window_of(p, journal)) ++m;
    if (m == 0) fail(ErrorKind::invalid, "journal has no publications in the cited window");

    // realized active share per citing journal, recounted from scratch
    std::vector<long> cohort_total(corpus.journal_count(), 0);
    std::vector<long> cohort_active(corpus.journal_count(), 0);
    for (PubIdx p = 0; p < corpus.publication_count(); ++p) {
        const Publication& pub = corpus.publication(p);
        if (pub.year != year) continue;
        ++cohort_total[pub.journal];
        for (PubIdx target : pub.references)
            if (is_active(target)) {
                ++cohort_active[pub.journal];
                break;
            }
    }

    Rational sum = 0;
    for (PubIdx p = 0; p < corpus.publication_count(); ++p) {
        const Publication& pub = corpus.publication(p);
        if (pub.year != year || !citing[pub.journal]) continue;
        long hits = 0, active = 0;
        for (PubIdx target : pub.references) {
            if (in_window_of(target, journal)) ++hits;
            if (is_active(target)) ++active;
        }
        if (hits == 0 || active == 0) continue;
        Rational p_share(cohort_active[pub.journal], cohort_total[pub.journal]);
        sum += Rational(hits) / (p_share * active);
    }
    return Rational(3, m) * sum;
}

BiasReport bias_report_from_corpus(const SynthCorpus& synth, const JournalMask& citing,
                                   const std::vector<Mode>& modes, int threads) {
    BiasReport report;
    for (const auto& field : synth.spec.fields) report.fields.push_back(field.name);
    report.modes.push_back(Mode::snip_revised);
    for (Mode mode : modes)
        if (mode != Mode::snip_revised) report.modes.push_back(mode);

    TableOptions options;
    options.threads = threads;
    for (Mode mode : report.modes) {
        IndicatorTable table = compute_table(synth.corpus, citing, mode, options);
        std::map<std::string, Rational> sums;
        std::map<std::string, BigInt> weights;
        for (const auto& score : table.scores) {
            if (!score.snip) continue;
            const std::string& field = synth.field_of_journal.at(score.journal_id);
            sums[field] += *score.snip * score.m;
            weights[field] += score.m;
        }
        auto& means = report.field_means[mode];
        for (const auto& field : report.fields)
            if (weights.count(field) && weights[field] > 0)
                means[field] = sums[field] / Rational(weights[field]);

        double lo = 0, hi = 0;
        bool first = true;
        for (const auto& [field, mean] : means) {
            double v = to_double(mean);
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        report.relative_gap[mode] = hi == 0 ? 0.0 : (hi - lo) / hi;
    }

    report.revised_fields_agree =
        report.relative_gap[Mode::snip_revised] <= report.revised_gap_threshold;
    for (Mode mode : report.modes)
        if (mode != Mode::snip_revised)
            report.variant_diverges[mode] = report.relative_gap[mode] > report.variant_gap_threshold;
    return report;
}

BiasReport bias_experiment(const FieldSpec& low, const FieldSpec& high, int year_of_analysis,
                           std::uint64_t seed, const std::vector<Mode>& modes) {
    SynthSpec spec;
    spec.year_of_analysis = year_of_analysis;
    spec.seed = seed;
    spec.fields = {low, high};
    SynthCorpus synth = generate(spec);
    JournalMask citing = spec.coincide
                             ? select_citing_journals(synth.corpus).included_mask
                             : synth.intended_citing;
    return bias_report_from_corpus(synth, citing, modes);
}

ordered_json bias_report_to_json(const BiasReport& report) {
    ordered_json j;
    auto modes = ordered_json::array();
    for (Mode mode : report.modes) modes.push_back(to_string(mode));
    j["modes"] = modes;
    j["fields"] = report.fields;
    ordered_json means = ordered_json::object();
    for (const auto& [mode, field_means] : report.field_means) {
        ordered_json per_field = ordered_json::object();
        for (const auto& [field, mean] : field_means) per_field[field] = to_double(mean);
        means[to_string(mode)] = per_field;
    }
    j["field_means"] = means;
    ordered_json gaps = ordered_json::object();
    for (const auto& [mode, gap] : report.relative_gap) gaps[to_string(mode)] = gap;
    j["relative_gap"] = gaps;
    j["revised_gap_threshold"] = report.revised_gap_threshold;
    j["variant_gap_threshold"] = report.variant_gap_threshold;
    j["revised_fields_agree"] = report.revised_fields_agree;
    ordered_json diverges = ordered_json::object();
    for (const auto& [mode, flag] : report.variant_diverges) diverges[to_string(mode)] = flag;
    j["variant_diverges"] = diverges;
    return j;
}

SimulationResult run_simulation(const SynthSpec& spec, int threads) {
    SimulationResult result{generate(spec), {}, {}, {}};
    const Corpus& corpus = result.synth.corpus;

    JournalMask citing;
    if (spec.coincide) {
        SelectionOptions options;
        options.threads = threads;
        result.selection = select_citing_journals(corpus, options);
        citing = result.selection.included_mask;
    } else {
        citing = result.synth.intended_citing;
        result.selection.year = spec.year_of_analysis;
        result.selection.included_mask = citing;
        for (JournalIdx j = 0; j < corpus.journal_count(); ++j)
            if (citing[j]) result.selection.included.push_back(j);
    }

    auto mu = mu_per_field(corpus, citing, result.synth.field_of_journal);

    ordered_json mu_report;
    mu_report["year"] = spec.year_of_analysis;
    mu_report["seed"] = spec.seed;
    long citing_count = 0;
    for (auto flag : citing) citing_count += flag;
    mu_report["citing_journals"] = citing_count;
    auto fields = ordered_json::array();
    const int year = corpus.year_of_analysis();
    for (const auto& field : spec.fields) {
        long m1 = 0, m2 = 0;
        for (JournalIdx j = 0; j < corpus.journal_count(); ++j) {
            if (result.synth.field_of_journal.at(corpus.journal(j).id) != field.name) continue;
            m1 += corpus.pub_count_in(j, year - 3, year - 1);
            if (citing[j]) m2 += static_cast<long>(corpus.pubs_of(j, year).size());
        }
        ordered_json entry;
        entry["field"] = field.name;
        entry["m1"] = m1;
        entry["m2"] = m2;
        Rational predicted = m1 > 0 ? Rational(3 * m2, m1) : Rational(0);
        entry["predicted_mu"] = to_double(predicted);
        auto it = mu.find(field.name);
        if (it != mu.end()) {
            entry["mu"] = to_double(it->second);
            entry["mu_error"] = std::abs(to_double(it->second - predicted));
        }
        fields.push_back(entry);
    }
    mu_report["fields"] = fields;
    result.mu_report = mu_report;

    if (spec.fields.size() >= 2) {
        std::vector<Mode> modes{Mode::apriori, Mode::fractional_counting, Mode::audience_factor};
        result.bias_report =
            bias_report_to_json(bias_report_from_corpus(result.synth, citing, modes, threads));
    }
    return result;
}

} // namespace snipkit
