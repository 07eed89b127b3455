/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "snipkit/snipkit.h"

#include "compare.hpp"
#include "error.hpp"
#include "indicators.hpp"
#include "ingest.hpp"
#include "selection.hpp"
#include "synthlab.hpp"

#include <nlohmann/json.hpp>

#include <cstring>
#include <memory>
#include <sstream>

using namespace snipkit;

struct snip_corpus {
    Corpus corpus;
    IngestReport report;
};

struct snip_selection {
    CitingJournalSet set;
    std::string json; // serialized against the owning corpus
};

struct snip_table {
    IndicatorTable table;
};

namespace {

thread_local std::string g_last_error;

snip_status set_error(ErrorKind kind, const char* what) {
    g_last_error = what;
    switch (kind) {
        case ErrorKind::io: return SNIP_ERR_IO;
        case ErrorKind::parse: return SNIP_ERR_PARSE;
        case ErrorKind::invalid: return SNIP_ERR_INVALID;
        case ErrorKind::internal: return SNIP_ERR_INTERNAL;
    }
    return SNIP_ERR_INTERNAL;
}

template <typename Fn>
snip_status guarded(Fn&& fn) {
    try {
        fn();
        return SNIP_OK;
    } catch (const Error& e) {
        return set_error(e.kind(), e.what());
    } catch (const std::exception& e) {
        return set_error(ErrorKind::internal, e.what());
    } catch (...) {
        return set_error(ErrorKind::internal, "unknown error");
    }
}

snip_status require(bool condition, const char* message) {
    if (condition) return SNIP_OK;
    g_last_error = message;
    return SNIP_ERR_INVALID;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::set<std::string> split_doc_types(const char* csv) {
    std::set<std::string> out;
    if (!csv) return out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t begin = item.find_first_not_of(" \t");
        std::size_t end = item.find_last_not_of(" \t");
        if (begin != std::string::npos) out.insert(item.substr(begin, end - begin + 1));
    }
    return out;
}

} // namespace

extern "C" {

const char* snip_version(void) { return "0.1.0"; }

const char* snip_last_error(void) { return g_last_error.c_str(); }

void snip_string_free(char* s) { delete[] s; }

snip_status snip_corpus_ingest(const char* journals_csv, const char* publications_jsonl,
                               const char* merges_csv_or_null, int year_of_analysis,
                               const char* doc_types_or_null, snip_corpus** out) {
    if (auto rc = require(journals_csv && publications_jsonl && out, "null argument")) return rc;
    return guarded([&] {
        auto handle = std::make_unique<snip_corpus>();
        std::optional<std::filesystem::path> merges;
        if (merges_csv_or_null) merges = merges_csv_or_null;
        handle->corpus = ingest_files(journals_csv, publications_jsonl, merges, year_of_analysis,
                                      split_doc_types(doc_types_or_null), handle->report);
        *out = handle.release();
    });
}

snip_status snip_corpus_cache_save(const snip_corpus* corpus, const char* path) {
    if (auto rc = require(corpus && path, "null argument")) return rc;
    return guarded([&] { save_corpus_cache(corpus->corpus, path); });
}

snip_status snip_corpus_cache_load(const char* path, snip_corpus** out) {
    if (auto rc = require(path && out, "null argument")) return rc;
    return guarded([&] {
        auto handle = std::make_unique<snip_corpus>();
        handle->corpus = load_corpus_cache(path);
        *out = handle.release();
    });
}

snip_status snip_corpus_export(const snip_corpus* corpus, const char* journals_csv,
                               const char* publications_jsonl) {
    if (auto rc = require(corpus && journals_csv && publications_jsonl, "null argument")) return rc;
    return guarded([&] { write_corpus_files(corpus->corpus, journals_csv, publications_jsonl); });
}

snip_status snip_corpus_report_json(const snip_corpus* corpus, char** out_json) {
    if (auto rc = require(corpus && out_json, "null argument")) return rc;
    return guarded([&] {
        *out_json = dup_string(ingest_report_to_json(corpus->corpus, corpus->report).dump(2));
    });
}

snip_status snip_corpus_stats(const snip_corpus* corpus, uint64_t* journals,
                              uint64_t* publications, int* year_of_analysis) {
    if (auto rc = require(corpus != nullptr, "null argument")) return rc;
    if (journals) *journals = corpus->corpus.journal_count();
    if (publications) *publications = corpus->corpus.publication_count();
    if (year_of_analysis) *year_of_analysis = corpus->corpus.year_of_analysis();
    return SNIP_OK;
}

snip_status snip_corpus_hash(const snip_corpus* corpus, uint64_t* out_hash) {
    if (auto rc = require(corpus && out_hash, "null argument")) return rc;
    return guarded([&] { *out_hash = corpus->corpus.canonical_hash(); });
}

void snip_corpus_free(snip_corpus* corpus) { delete corpus; }

snip_status snip_selection_run(const snip_corpus* corpus, const char* threshold_or_null,
                               int max_iterations, int threads, snip_selection** out) {
    if (auto rc = require(corpus && out, "null argument")) return rc;
    return guarded([&] {
        SelectionOptions options;
        if (threshold_or_null) options.threshold = parse_decimal(threshold_or_null);
        if (max_iterations > 0) options.max_iterations = max_iterations;
        options.threads = threads;
        auto handle = std::make_unique<snip_selection>();
        handle->set = select_citing_journals(corpus->corpus, options);
        handle->json = selection_to_json(corpus->corpus, handle->set).dump(2);
        *out = handle.release();
    });
}

snip_status snip_selection_to_json(const snip_selection* selection, char** out_json) {
    if (auto rc = require(selection && out_json, "null argument")) return rc;
    *out_json = dup_string(selection->json);
    return SNIP_OK;
}

snip_status snip_selection_from_json(const snip_corpus* corpus, const char* json_text,
                                     snip_selection** out) {
    if (auto rc = require(corpus && json_text && out, "null argument")) return rc;
    return guarded([&] {
        auto parsed = nlohmann::json::parse(json_text, nullptr, false);
        if (parsed.is_discarded()) fail(ErrorKind::parse, "selection is not valid JSON");
        auto handle = std::make_unique<snip_selection>();
        handle->set = selection_from_json(corpus->corpus, parsed);
        handle->json = selection_to_json(corpus->corpus, handle->set).dump(2);
        *out = handle.release();
    });
}

snip_status snip_selection_stats(const snip_selection* selection, int* iterations,
                                 uint64_t* included_count) {
    if (auto rc = require(selection != nullptr, "null argument")) return rc;
    if (iterations) *iterations = selection->set.iterations;
    if (included_count) *included_count = selection->set.included.size();
    return SNIP_OK;
}

void snip_selection_free(snip_selection* selection) { delete selection; }

snip_status snip_table_compute(const snip_corpus* corpus, const snip_selection* selection_or_null,
                               const char* mode, long min_pubs, int threads, snip_table** out) {
    if (auto rc = require(corpus && mode && out, "null argument")) return rc;
    return guarded([&] {
        auto parsed_mode = mode_from_string(mode);
        if (!parsed_mode) fail(ErrorKind::invalid, "unknown indicator mode '" + std::string(mode) + "'");
        JournalMask citing = selection_or_null ? selection_or_null->set.included_mask
                                               : corpus->corpus.all_journals_mask();
        if (selection_or_null && citing.size() != corpus->corpus.journal_count())
            fail(ErrorKind::invalid, "selection does not belong to this corpus");
        TableOptions options;
        if (min_pubs >= 0) options.min_pubs = min_pubs;
        options.threads = threads;
        options.notes = selection_or_null ? "citing_set=selection" : "citing_set=all";
        auto handle = std::make_unique<snip_table>();
        handle->table = compute_table(corpus->corpus, citing, *parsed_mode, options);
        *out = handle.release();
    });
}

snip_status snip_table_to_csv(const snip_table* table, char** out_csv) {
    if (auto rc = require(table && out_csv, "null argument")) return rc;
    return guarded([&] { *out_csv = dup_string(write_scores_csv(table->table)); });
}

snip_status snip_table_from_csv(const char* csv_text, snip_table** out) {
    if (auto rc = require(csv_text && out, "null argument")) return rc;
    return guarded([&] {
        auto handle = std::make_unique<snip_table>();
        handle->table = read_scores_csv(csv_text);
        *out = handle.release();
    });
}

snip_status snip_table_stats(const snip_table* table, uint64_t* journal_count,
                             double* weighted_mean_snip) {
    if (auto rc = require(table != nullptr, "null argument")) return rc;
    if (journal_count) *journal_count = table->table.scores.size();
    if (weighted_mean_snip)
        *weighted_mean_snip =
            table->table.weighted_mean_snip ? to_double(*table->table.weighted_mean_snip) : 0.0;
    return SNIP_OK;
}

void snip_table_free(snip_table* table) { delete table; }

snip_status snip_compare_json(const snip_table* a, const snip_table* b, long min_pubs,
                              const char* diff_factor_or_null, int top_n, char** out_json) {
    if (auto rc = require(a && b && out_json, "null argument")) return rc;
    return guarded([&] {
        ComparisonOptions options;
        if (min_pubs >= 0) options.min_pubs = min_pubs;
        if (diff_factor_or_null) options.diff_factor = parse_decimal(diff_factor_or_null);
        if (top_n > 0) options.top_n = top_n;
        auto report = compare_tables(a->table, b->table, options);
        *out_json = dup_string(comparison_to_json(report).dump(2));
    });
}

snip_status snip_simulate(const char* spec_json, int threads, snip_corpus** out_corpus,
                          char** out_mu_report_json, char** out_bias_report_json) {
    if (auto rc = require(spec_json != nullptr, "null argument")) return rc;
    return guarded([&] {
        SynthSpec spec = parse_synth_spec_text(spec_json);
        SimulationResult result = run_simulation(spec, threads);
        if (out_mu_report_json) *out_mu_report_json = dup_string(result.mu_report.dump(2));
        if (out_bias_report_json)
            *out_bias_report_json =
                result.bias_report.is_null() ? nullptr : dup_string(result.bias_report.dump(2));
        if (out_corpus) {
            auto handle = std::make_unique<snip_corpus>();
            handle->corpus = std::move(result.synth.corpus);
            *out_corpus = handle.release();
        }
    });
}

} // extern "C"
