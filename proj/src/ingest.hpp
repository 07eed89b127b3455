/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "corpus.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

// File formats:
//   journals.csv        journal_id,title,is_trade      (is_trade in {0,1})
//   publications.jsonl  one JSON object per line:
//                       {"pub_id","journal_id","year","doc_type",
//                        "references":[...], "refs_missing":bool}
//   merges.csv          old_journal_id,new_journal_id
// Malformed rows become per-record errors with line numbers; ingestion
// continues past them.

namespace snipkit {

std::vector<JournalRecord> read_journals_csv(const std::filesystem::path& path, IngestReport& report);
std::vector<PublicationRecord> read_publications_jsonl(const std::filesystem::path& path,
                                                       IngestReport& report);
std::vector<MergePair> read_merges_csv(const std::filesystem::path& path, IngestReport& report);

// ingest + merge_title_changes in one step. An empty allowlist means the
// default document types.
Corpus ingest_files(const std::filesystem::path& journals_csv,
                    const std::filesystem::path& publications_jsonl,
                    const std::optional<std::filesystem::path>& merges_csv,
                    int year_of_analysis,
                    const std::set<std::string>& doc_type_allowlist,
                    IngestReport& report);

nlohmann::ordered_json ingest_report_to_json(const Corpus& corpus, const IngestReport& report);

// Canonical corpus export (entities sorted by id), round-trippable through
// ingest_files. Synthetic corpora use this to flow through the same
// pipeline as real data.
void write_corpus_files(const Corpus& corpus,
                        const std::filesystem::path& journals_csv,
                        const std::filesystem::path& publications_jsonl);

// Binary corpus cache with integrity hash.
void save_corpus_cache(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_corpus_cache(const std::filesystem::path& path);

} // namespace snipkit
