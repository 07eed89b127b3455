/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef SNIPKIT_H
#define SNIPKIT_H

/*
 * C interface to the snipkit citation-indicator engine.
 *
 * All functions return SNIP_OK on success; on failure they return an error
 * code and leave a human-readable message in snip_last_error() (per
 * thread). Objects are opaque handles released with the matching *_free
 * function. Strings returned through char** are heap-allocated and must be
 * released with snip_string_free().
 */

#include <stdint.h>

#if defined(_WIN32)
#define SNIPKIT_API __declspec(dllexport)
#else
#define SNIPKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum snip_status {
    SNIP_OK = 0,
    SNIP_ERR_IO = 1,       /* file not found / not readable / not writable */
    SNIP_ERR_PARSE = 2,    /* malformed input file */
    SNIP_ERR_INVALID = 3,  /* invalid arguments or inconsistent data */
    SNIP_ERR_INTERNAL = 4, /* unexpected failure */
} snip_status;

typedef struct snip_corpus snip_corpus;
typedef struct snip_selection snip_selection;
typedef struct snip_table snip_table;

SNIPKIT_API const char* snip_version(void);
SNIPKIT_API const char* snip_last_error(void);
SNIPKIT_API void snip_string_free(char* s);

/* --- corpus ------------------------------------------------------------ */

/* Ingests journals.csv and publications.jsonl (and optionally merges.csv)
 * for one year of analysis. doc_types is a comma-separated allowlist; pass
 * NULL for the default (article, conference paper, review). Per-record
 * problems are reported inside the ingest report, not as failures. */
SNIPKIT_API snip_status snip_corpus_ingest(const char* journals_csv,
                                           const char* publications_jsonl,
                                           const char* merges_csv_or_null,
                                           int year_of_analysis,
                                           const char* doc_types_or_null,
                                           snip_corpus** out);

SNIPKIT_API snip_status snip_corpus_cache_save(const snip_corpus* corpus, const char* path);
SNIPKIT_API snip_status snip_corpus_cache_load(const char* path, snip_corpus** out);

/* Canonical journals.csv / publications.jsonl export. */
SNIPKIT_API snip_status snip_corpus_export(const snip_corpus* corpus,
                                           const char* journals_csv,
                                           const char* publications_jsonl);

/* JSON ingest report for the ingestion that produced this corpus. */
SNIPKIT_API snip_status snip_corpus_report_json(const snip_corpus* corpus, char** out_json);

SNIPKIT_API snip_status snip_corpus_stats(const snip_corpus* corpus, uint64_t* journals,
                                          uint64_t* publications, int* year_of_analysis);
SNIPKIT_API snip_status snip_corpus_hash(const snip_corpus* corpus, uint64_t* out_hash);
SNIPKIT_API void snip_corpus_free(snip_corpus* corpus);

/* --- citing-journal selection ------------------------------------------ */

/* threshold is a decimal string ("0.20"); NULL means the default 0.20. */
SNIPKIT_API snip_status snip_selection_run(const snip_corpus* corpus,
                                           const char* threshold_or_null,
                                           int max_iterations, int threads,
                                           snip_selection** out);
SNIPKIT_API snip_status snip_selection_to_json(const snip_selection* selection, char** out_json);
SNIPKIT_API snip_status snip_selection_from_json(const snip_corpus* corpus, const char* json_text,
                                                 snip_selection** out);
SNIPKIT_API snip_status snip_selection_stats(const snip_selection* selection, int* iterations,
                                             uint64_t* included_count);
SNIPKIT_API void snip_selection_free(snip_selection* selection);

/* --- indicator tables --------------------------------------------------- */

/* mode: rip | snip-original | snip-revised | audience-factor |
 *       fractional-counting | apriori.
 * The selection handle is the citing-journal universe; pass NULL to count
 * citations from every journal in the database (the original indicator's
 * convention). */
SNIPKIT_API snip_status snip_table_compute(const snip_corpus* corpus,
                                           const snip_selection* selection_or_null,
                                           const char* mode, long min_pubs, int threads,
                                           snip_table** out);
SNIPKIT_API snip_status snip_table_to_csv(const snip_table* table, char** out_csv);
SNIPKIT_API snip_status snip_table_from_csv(const char* csv_text, snip_table** out);
SNIPKIT_API snip_status snip_table_stats(const snip_table* table, uint64_t* journal_count,
                                         double* weighted_mean_snip);
SNIPKIT_API void snip_table_free(snip_table* table);

/* Comparison report (correlation, weighted means, top-N differences,
 * scatter pairs) as JSON. diff_factor is a decimal string; NULL derives it
 * from the tables' publication-weighted means. */
SNIPKIT_API snip_status snip_compare_json(const snip_table* a, const snip_table* b, long min_pubs,
                                          const char* diff_factor_or_null, int top_n,
                                          char** out_json);

/* --- synthetic-corpus laboratory ---------------------------------------- */

/* Generates a corpus from a synthetic spec (JSON text), runs the standard
 * pipeline on it and returns the per-field mu report plus, for specs with
 * at least two fields, the indicator-bias report. Any output pointer may
 * be NULL when the caller does not need it. */
SNIPKIT_API snip_status snip_simulate(const char* spec_json, int threads,
                                      snip_corpus** out_corpus,
                                      char** out_mu_report_json,
                                      char** out_bias_report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SNIPKIT_H */
