/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "error.hpp"
#include "support/fixtures.hpp"
#include "synthlab.hpp"

#include <cmath>
#include <map>

using namespace snipkit;

namespace {

FieldSpec make_field(std::string name, long journals, long pubs_per_year,
                     std::vector<long> ref_values, std::vector<double> ref_weights) {
    FieldSpec f;
    f.name = std::move(name);
    f.n_cited_journals = journals;
    f.n_citing_journals = journals;
    f.pubs_per_year = {pubs_per_year, pubs_per_year, pubs_per_year, pubs_per_year};
    f.ref_counts.values = std::move(ref_values);
    f.ref_counts.weights = std::move(ref_weights);
    return f;
}

SynthSpec make_spec(std::uint64_t seed, std::vector<FieldSpec> fields) {
    SynthSpec spec;
    spec.year_of_analysis = 2010;
    spec.seed = seed;
    spec.fields = std::move(fields);
    return spec;
}

} // namespace

TEST_CASE("minimal closed world generates and scores") {
    auto spec = make_spec(1, {make_field("X", 1, 1, {1}, {1.0})});
    SynthCorpus synth = generate(spec);
    CHECK(synth.corpus.journal_count() == 1);
    CHECK(synth.corpus.publication_count() == 4);
    auto selected = select_citing_journals(synth.corpus);
    CHECK(selected.included.size() == 1);
    auto mu = mu_per_field(synth.corpus, selected.included_mask, synth.field_of_journal);
    CHECK(mu.at("X") == 1);
}

TEST_CASE("the 1000-publication field averages RIP 4") {
    // 10 journals publishing 100 per year: 1,000 citing publications with
    // 12 active references each over 3,000 cited publications
    auto spec = make_spec(2, {make_field("X", 10, 100, {12}, {1.0})});
    SynthCorpus synth = generate(spec);
    IndicatorTable rip = compute_table(synth.corpus, synth.corpus.all_journals_mask(), Mode::rip);
    REQUIRE(rip.weighted_mean_snip.has_value());
    CHECK(*rip.weighted_mean_snip == 4);
}

TEST_CASE("two fields with different densities equalize under the revised indicator only") {
    auto spec = make_spec(3, {make_field("DENSE", 4, 12, {12}, {1.0}),
                              make_field("SPARSE", 4, 12, {3}, {1.0})});
    SynthCorpus synth = generate(spec);
    auto selected = select_citing_journals(synth.corpus);

    auto mu = mu_per_field(synth.corpus, selected.included_mask, synth.field_of_journal);
    CHECK(mu.at("DENSE") == 1);
    CHECK(mu.at("SPARSE") == 1);

    // per-field weighted mean RIP: 4 vs 1
    IndicatorTable rip = compute_table(synth.corpus, selected.included_mask, Mode::rip);
    std::map<std::string, Rational> sums;
    std::map<std::string, long> weights;
    for (const auto& s : rip.scores) {
        sums[synth.field_of_journal.at(s.journal_id)] += *s.snip * s.m;
        weights[synth.field_of_journal.at(s.journal_id)] += s.m;
    }
    CHECK(sums.at("DENSE") / weights.at("DENSE") == 4);
    CHECK(sums.at("SPARSE") / weights.at("SPARSE") == 1);
}

TEST_CASE("mu equals one exactly whenever the idealized-world assumptions hold") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto spec = make_spec(seed, {make_field("A", 2 + seed % 3, 6 + seed % 5, {1, 4, 9},
                                                {0.3, 0.4, 0.3}),
                                     make_field("B", 2, 10, {0, 2, 50}, {0.5, 0.3, 0.2})});
        SynthCorpus synth = generate(spec);
        auto selected = select_citing_journals(synth.corpus);
        CHECK(selected.included.size() == synth.corpus.journal_count());
        auto mu = mu_per_field(synth.corpus, selected.included_mask, synth.field_of_journal);
        CHECK(mu.at("A") == 1);
        CHECK(mu.at("B") == 1);
    }
}

TEST_CASE("publication growth shifts mu to 3 M2 / M1") {
    auto growing = make_field("G", 3, 10, {4}, {1.0});
    growing.pubs_per_year.clear();
    growing.growth_factor = 1.3;
    for (int t = 0; t < 4; ++t)
        growing.pubs_per_year.push_back(std::lround(10 * std::pow(1.3, t)));
    auto spec = make_spec(4, {growing});
    SynthCorpus synth = generate(spec);
    auto selected = select_citing_journals(synth.corpus);
    auto mu = mu_per_field(synth.corpus, selected.included_mask, synth.field_of_journal);

    const Corpus& corpus = synth.corpus;
    long m1 = 0, m2 = 0;
    for (JournalIdx j = 0; j < corpus.journal_count(); ++j) {
        m1 += corpus.pub_count_in(j, 2007, 2009);
        m2 += static_cast<long>(corpus.pubs_of(j, 2010).size());
    }
    CHECK(mu.at("G") == Rational(3 * m2, m1));
    CHECK(mu.at("G") > 1); // growing output -> mu above one
}

TEST_CASE("unidirectional cross-field flow raises the cited field and lowers the citing one") {
    auto applied = make_field("APPLIED", 3, 10, {6}, {1.0});
    applied.cross_field_fraction = 0.4; // cites BASIC
    auto basic = make_field("BASIC", 3, 10, {6}, {1.0});
    auto spec = make_spec(5, {applied, basic});
    SynthCorpus synth = generate(spec);
    auto selected = select_citing_journals(synth.corpus);
    auto mu = mu_per_field(synth.corpus, selected.included_mask, synth.field_of_journal);
    CHECK(mu.at("BASIC") > 1);
    CHECK(mu.at("APPLIED") < 1);
}

TEST_CASE("split citing/cited journal sets satisfy the theorem with balanced output") {
    // 3 cited journals x 10 per cited year; 2 citing journals x 15 in the
    // year of analysis: each year carries 30 publications
    FieldSpec f;
    f.name = "S";
    f.n_cited_journals = 3;
    f.n_citing_journals = 2;
    f.pubs_per_year = {10, 10, 10, 15};
    f.ref_counts.values = {5};
    f.ref_counts.weights = {1.0};
    SynthSpec spec = make_spec(6, {f});
    spec.coincide = false;
    SynthCorpus synth = generate(spec);
    auto mu = mu_per_field(synth.corpus, synth.intended_citing, synth.field_of_journal);
    CHECK(mu.at("S") == 1);
}

TEST_CASE("brute-force oracle agrees with the revised indicator") {
    SUBCASE("merger example") {
        Corpus corpus = fixtures::merger_example().build();
        auto selected = select_citing_journals(corpus);
        CHECK(brute_force_snip(corpus, selected.included_mask, *corpus.find_journal("JX")) == 6);
        CHECK(brute_force_snip(corpus, selected.included_mask, *corpus.find_journal("JY")) == 6);
        Corpus merged = fixtures::merger_example().build_merged();
        auto merged_selected = select_citing_journals(merged);
        CHECK(brute_force_snip(merged, merged_selected.included_mask,
                               *merged.find_journal("JX")) == 6);
    }

    SUBCASE("a journal nobody cites scores zero") {
        Corpus corpus = fixtures::cascading_selection().build();
        auto selected = select_citing_journals(corpus);
        CHECK(brute_force_snip(corpus, selected.included_mask, *corpus.find_journal("SB")) == 0);
    }

    SUBCASE("randomized corpora") {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            auto spec = make_spec(seed, {make_field("X", 3, 6, {0, 1, 5}, {0.3, 0.4, 0.3})});
            SynthCorpus synth = generate(spec);
            auto selected = select_citing_journals(synth.corpus);
            IndicatorTable table =
                compute_table(synth.corpus, selected.included_mask, Mode::snip_revised);
            for (const auto& score : table.scores) {
                auto j = synth.corpus.find_journal(score.journal_id);
                Rational oracle = brute_force_snip(synth.corpus, selected.included_mask, *j);
                CHECK(*score.snip == oracle);
            }
        }
    }
}

TEST_CASE("generation is seed-deterministic") {
    auto spec = make_spec(42, {make_field("X", 3, 8, {0, 3, 7}, {0.2, 0.5, 0.3})});
    Corpus a = generate(spec).corpus;
    Corpus b = generate(spec).corpus;
    CHECK(a.canonical_hash() == b.canonical_hash());

    spec.seed = 43;
    Corpus c = generate(spec).corpus;
    CHECK(c.canonical_hash() != a.canonical_hash());
}

TEST_CASE("infeasible reference demand is rejected") {
    // 50 references demanded from a 3-publication pool
    auto spec = make_spec(7, {make_field("X", 1, 1, {50}, {1.0})});
    CHECK_THROWS_AS(generate(spec), Error);
}

TEST_CASE("bias experiment separates the p-corrected indicator from the variants") {
    SUBCASE("equal zero shares: every mode equalizes") {
        auto report = bias_experiment(make_field("L", 3, 10, {8}, {1.0}),
                                      make_field("H", 3, 10, {2}, {1.0}), 2010, 11,
                                      {Mode::apriori, Mode::fractional_counting});
        CHECK(report.revised_fields_agree);
        CHECK(report.relative_gap.at(Mode::apriori) == doctest::Approx(0.0));
        CHECK(report.relative_gap.at(Mode::fractional_counting) == doctest::Approx(0.0));
    }

    SUBCASE("differing zero shares: apriori and fractional diverge, revised does not") {
        auto report = bias_experiment(make_field("FULL", 3, 10, {8}, {1.0}),
                                      make_field("HALF", 3, 10, {0, 8}, {0.5, 0.5}), 2010, 12,
                                      {Mode::apriori, Mode::fractional_counting});
        CHECK(report.revised_fields_agree);
        CHECK(report.variant_diverges.at(Mode::apriori));
        CHECK(report.variant_diverges.at(Mode::fractional_counting));
        // the gap should be roughly the missing-share factor
        CHECK(report.relative_gap.at(Mode::apriori) == doctest::Approx(0.5).epsilon(0.05));
    }
}

TEST_CASE("specs parse from JSON and bad specs are rejected") {
    auto spec = parse_synth_spec_text(R"({
        "year_of_analysis": 2010,
        "seed": 9,
        "fields": [{
            "name": "X",
            "n_cited_journals": 2,
            "pubs_per_journal_per_year": 5,
            "ref_count_distribution": {"values": [0, 3], "weights": [0.2, 0.8]}
        }]
    })");
    CHECK(spec.fields.size() == 1);
    CHECK(spec.fields[0].n_citing_journals == 2);
    CHECK(spec.fields[0].pubs_per_year == std::vector<long>{5, 5, 5, 5});
    SynthCorpus synth = generate(spec);
    CHECK(synth.corpus.journal_count() == 2);

    CHECK_THROWS_AS(parse_synth_spec_text("not json"), Error);
    CHECK_THROWS_AS(parse_synth_spec_text(R"({"fields": []})"), Error);
    CHECK_THROWS_AS(parse_synth_spec_text(R"({"fields": [{"n_cited_journals": 0,
        "pubs_per_journal_per_year": 5,
        "ref_count_distribution": {"values": [1], "weights": [1]}}]})"),
                    Error);
}

TEST_CASE("run_simulation produces the documented reports") {
    auto spec = parse_synth_spec_text(R"({
        "year_of_analysis": 2010,
        "seed": 21,
        "fields": [
            {"name": "A", "n_cited_journals": 3, "pubs_per_journal_per_year": 8,
             "ref_count_distribution": {"values": [6], "weights": [1]}},
            {"name": "B", "n_cited_journals": 3, "pubs_per_journal_per_year": 8,
             "ref_count_distribution": {"values": [0, 2], "weights": [0.4, 0.6]}}
        ]
    })");
    SimulationResult result = run_simulation(spec);
    CHECK(result.mu_report["fields"].size() == 2);
    for (const auto& f : result.mu_report["fields"]) {
        CHECK(f["mu"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(f["predicted_mu"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(f["m1"].get<long>() == 3 * f["m2"].get<long>());
    }
    CHECK_FALSE(result.bias_report.is_null());
    CHECK(result.bias_report["revised_fields_agree"] == true);
}

TEST_CASE("exported synthetic corpora flow through the standard pipeline") {
    auto spec = make_spec(33, {make_field("X", 3, 6, {0, 4}, {0.25, 0.75})});
    SynthCorpus synth = generate(spec);
    auto records_journals = synth.corpus.journal_records();
    auto records_pubs = synth.corpus.publication_records();
    Corpus rebuilt = Corpus::build(2010, Corpus::default_doc_types(), records_journals,
                                   records_pubs, nullptr);
    CHECK(rebuilt.canonical_hash() == synth.corpus.canonical_hash());
}
