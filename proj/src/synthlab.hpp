/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "corpus.hpp"
#include "indicators.hpp"
#include "rational.hpp"
#include "selection.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace snipkit {

// Distribution over active-reference counts per publication. Mass at zero
// is realized deterministically per journal-year cohort (round(w0 * size)
// publications get no references) so every journal in a field carries the
// same active share; positive counts are drawn at random. When the zero
// mass is below one, at least one publication per cohort keeps references,
// which realizes the no-journal-without-active-references assumption.
struct RefCountDist {
    std::vector<long> values;
    std::vector<double> weights;
};

struct FieldSpec {
    std::string name;
    long n_cited_journals = 1;
    long n_citing_journals = 1;
    // publications per journal for years [Y-3, Y-2, Y-1, Y]; either given
    // explicitly or derived from a base count and growth_factor
    std::vector<long> pubs_per_year;
    RefCountDist ref_counts;
    double cross_field_fraction = 0; // fraction of references aimed at other fields
    double growth_factor = 1;        // per-year multiplier on publication counts
};

// When `coincide` is true (the default) each field has one set of journals
// publishing in all four years, acting as both cited and citing journals.
// Otherwise cited journals publish only in the cited window and citing
// journals only in the year of analysis; such corpora bypass selection
// (neither role can pass the continuity step) and are driven with the
// generator's intended citing universe, which spans all generated
// journals so that every in-window reference counts as active.
struct SynthSpec {
    int year_of_analysis = 2010;
    std::uint64_t seed = 0;
    bool coincide = true;
    std::vector<FieldSpec> fields;
};

SynthSpec parse_synth_spec(const nlohmann::json& j);
SynthSpec parse_synth_spec_text(const std::string& text);

struct SynthCorpus {
    Corpus corpus;
    SynthSpec spec;
    std::map<std::string, std::string> field_of_journal; // every journal
    JournalMask intended_citing;                         // generator's citing set
};

// Deterministic for a given spec and seed. Reference targets are drawn
// uniformly (without replacement per publication) from the field's
// cited-window publications, or from other fields per the cross-field
// knob. Throws when the demanded reference count exceeds the target pool.
SynthCorpus generate(const SynthSpec& spec);

// Publication-weighted mean revised SNIP of the cited journals per field
// (the quantity that equals one in the idealized world). Every journal
// with publications in the cited window must be assigned to a field.
std::map<std::string, Rational> mu_per_field(const Corpus& corpus, const JournalMask& citing,
                                             const std::map<std::string, std::string>& field_of_journal);

// Independent oracle for the revised indicator: direct enumeration of all
// (citing publication, reference) pairs with its own share counting; no
// code shared with the indicators module. Small corpora only.
Rational brute_force_snip(const Corpus& corpus, const JournalMask& citing, JournalIdx journal);

struct BiasReport {
    std::vector<std::string> fields;
    std::vector<Mode> modes;
    // mode -> field -> publication-weighted mean score of cited journals
    std::map<Mode, std::map<std::string, Rational>> field_means;
    std::map<Mode, double> relative_gap; // max pairwise relative gap between fields
    double revised_gap_threshold = 0.01;
    double variant_gap_threshold = 0.05;
    bool revised_fields_agree = false;
    std::map<Mode, bool> variant_diverges;
};

// Generates a corpus from two field specs differing in citation density
// and zero-active-reference share, and reports per-mode field means. The
// revised indicator is always evaluated alongside `modes`.
BiasReport bias_experiment(const FieldSpec& low, const FieldSpec& high, int year_of_analysis,
                           std::uint64_t seed, const std::vector<Mode>& modes);
BiasReport bias_report_from_corpus(const SynthCorpus& synth, const JournalMask& citing,
                                   const std::vector<Mode>& modes, int threads = 1);

nlohmann::ordered_json bias_report_to_json(const BiasReport& report);

// One-stop driver used by the CLI: generate, select (or use the intended
// citing set in split mode), compute the revised table and mu per field,
// and run the bias comparison when the spec has at least two fields.
struct SimulationResult {
    SynthCorpus synth;
    CitingJournalSet selection;
    nlohmann::ordered_json mu_report;
    nlohmann::ordered_json bias_report; // null when fewer than two fields
};

SimulationResult run_simulation(const SynthSpec& spec, int threads = 1);

} // namespace snipkit
