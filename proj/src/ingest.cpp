/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ingest.hpp"

#include "csv.hpp"
#include "error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

namespace snipkit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
    return out;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

void expect_header(const std::filesystem::path& path, const std::string& line,
                   const std::vector<std::string>& expected) {
    auto fields = csv_split(line);
    if (fields != expected) {
        std::string want;
        for (const auto& f : expected) want += (want.empty() ? "" : ",") + f;
        fail(ErrorKind::parse, "'" + path.string() + "': expected header '" + want + "'");
    }
}

} // namespace

std::vector<JournalRecord> read_journals_csv(const std::filesystem::path& path,
                                             IngestReport& report) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::parse, "'" + path.string() + "' is empty");
    expect_header(path, strip_cr(line), {"journal_id", "title", "is_trade"});

    std::vector<JournalRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        std::vector<std::string> fields;
        try {
            fields = csv_split(line);
        } catch (const Error& e) {
            report.errors.push_back({path.filename().string(), line_no, e.what()});
            continue;
        }
        if (fields.size() != 3 || fields[0].empty() || (fields[2] != "0" && fields[2] != "1")) {
            report.errors.push_back({path.filename().string(), line_no, "malformed journal row"});
            continue;
        }
        records.push_back({fields[0], fields[1], fields[2] == "1"});
    }
    return records;
}

std::vector<PublicationRecord> read_publications_jsonl(const std::filesystem::path& path,
                                                       IngestReport& report) {
    auto in = open_input(path);
    std::vector<PublicationRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            report.errors.push_back({path.filename().string(), line_no, "invalid JSON object"});
            continue;
        }
        try {
            PublicationRecord rec;
            rec.id = obj.at("pub_id").get<std::string>();
            rec.journal_id = obj.at("journal_id").get<std::string>();
            rec.year = obj.at("year").get<int>();
            rec.doc_type = obj.at("doc_type").get<std::string>();
            if (obj.contains("references")) {
                for (const auto& r : obj.at("references")) rec.references.push_back(r.get<std::string>());
            }
            rec.refs_missing = obj.value("refs_missing", false);
            records.push_back(std::move(rec));
        } catch (const json::exception& e) {
            report.errors.push_back({path.filename().string(), line_no, e.what()});
        }
    }
    return records;
}

std::vector<MergePair> read_merges_csv(const std::filesystem::path& path, IngestReport& report) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::parse, "'" + path.string() + "' is empty");
    expect_header(path, strip_cr(line), {"old_journal_id", "new_journal_id"});

    std::vector<MergePair> pairs;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        std::vector<std::string> fields;
        try {
            fields = csv_split(line);
        } catch (const Error& e) {
            report.errors.push_back({path.filename().string(), line_no, e.what()});
            continue;
        }
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
            report.errors.push_back({path.filename().string(), line_no, "malformed merge row"});
            continue;
        }
        pairs.push_back({fields[0], fields[1]});
    }
    return pairs;
}

Corpus ingest_files(const std::filesystem::path& journals_csv,
                    const std::filesystem::path& publications_jsonl,
                    const std::optional<std::filesystem::path>& merges_csv,
                    int year_of_analysis,
                    const std::set<std::string>& doc_type_allowlist,
                    IngestReport& report) {
    auto journals = read_journals_csv(journals_csv, report);
    auto pubs = read_publications_jsonl(publications_jsonl, report);
    Corpus corpus = Corpus::build(year_of_analysis, doc_type_allowlist, journals, pubs, &report);
    if (merges_csv) {
        auto merges = read_merges_csv(*merges_csv, report);
        corpus = corpus.merged(merges, &report);
    }
    return corpus;
}

ordered_json ingest_report_to_json(const Corpus& corpus, const IngestReport& report) {
    ordered_json j;
    j["year_of_analysis"] = corpus.year_of_analysis();
    j["doc_type_allowlist"] = corpus.doc_type_allowlist();
    j["journals"] = report.journals;
    j["publications"] = report.publications;
    j["publications_dropped"] = {
        {"doc_type", report.dropped_doc_type},
        {"no_reference_data", report.dropped_no_reference_data},
        {"unknown_journal", report.dropped_unknown_journal},
    };
    j["references_dropped"] = {
        {"unresolved_target", report.refs_unresolved},
        {"duplicate", report.refs_duplicate},
        {"self", report.refs_self},
    };
    j["merges_applied"] = report.merges_applied;
    j["merges_skipped"] = report.merges_skipped;
    ordered_json errors = ordered_json::array();
    for (const auto& e : report.errors)
        errors.push_back({{"file", e.file}, {"line", e.line}, {"message", e.message}});
    j["record_errors"] = errors;
    return j;
}

void write_corpus_files(const Corpus& corpus,
                        const std::filesystem::path& journals_csv,
                        const std::filesystem::path& publications_jsonl) {
    std::vector<JournalIdx> journals(corpus.journal_count());
    for (JournalIdx i = 0; i < journals.size(); ++i) journals[i] = i;
    std::sort(journals.begin(), journals.end(), [&](JournalIdx a, JournalIdx b) {
        return corpus.journal(a).id < corpus.journal(b).id;
    });
    auto jout = open_output(journals_csv);
    jout << "journal_id,title,is_trade\n";
    for (JournalIdx j : journals) {
        const Journal& journal = corpus.journal(j);
        std::string title = journal.titles.empty() ? journal.id : journal.titles.front();
        jout << csv_escape(journal.id) << ',' << csv_escape(title) << ','
             << (journal.is_trade ? '1' : '0') << '\n';
    }

    std::vector<PubIdx> pubs(corpus.publication_count());
    for (PubIdx i = 0; i < pubs.size(); ++i) pubs[i] = i;
    std::sort(pubs.begin(), pubs.end(), [&](PubIdx a, PubIdx b) {
        return corpus.publication(a).id < corpus.publication(b).id;
    });
    auto pout = open_output(publications_jsonl);
    for (PubIdx p : pubs) {
        const Publication& pub = corpus.publication(p);
        ordered_json obj;
        obj["pub_id"] = pub.id;
        obj["journal_id"] = corpus.journal(pub.journal).id;
        obj["year"] = pub.year;
        obj["doc_type"] = pub.doc_type;
        std::vector<std::string> refs;
        refs.reserve(pub.references.size());
        for (PubIdx r : pub.references) refs.push_back(corpus.publication(r).id);
        std::sort(refs.begin(), refs.end());
        obj["references"] = refs;
        pout << obj.dump() << '\n';
    }
}

namespace {

// Corpus cache layout: magic, version, then length-prefixed fields in
// storage order, followed by the canonical hash for integrity.
constexpr char kCacheMagic[8] = {'S', 'N', 'P', 'C', 'O', 'R', '0', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_str(std::string& out, const std::string& s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out += s;
}

class CacheReader {
public:
    explicit CacheReader(std::string bytes) : bytes_(std::move(bytes)) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return v;
    }
    std::string str() {
        std::uint32_t len = u32();
        need(len);
        std::string s = bytes_.substr(pos_, len);
        pos_ += len;
        return s;
    }
    void raw(char* dst, std::size_t len) {
        need(len);
        std::memcpy(dst, bytes_.data() + pos_, len);
        pos_ += len;
    }

private:
    void need(std::size_t n) {
        if (pos_ + n > bytes_.size()) fail(ErrorKind::parse, "corpus cache is truncated");
    }
    std::string bytes_;
    std::size_t pos_ = 0;
};

} // namespace

void save_corpus_cache(const Corpus& corpus, const std::filesystem::path& path) {
    std::string out;
    out.append(kCacheMagic, sizeof(kCacheMagic));
    put_u32(out, static_cast<std::uint32_t>(corpus.year_of_analysis()));
    put_u32(out, static_cast<std::uint32_t>(corpus.doc_type_allowlist().size()));
    for (const auto& t : corpus.doc_type_allowlist()) put_str(out, t);

    put_u32(out, static_cast<std::uint32_t>(corpus.journal_count()));
    for (JournalIdx j = 0; j < corpus.journal_count(); ++j) {
        const Journal& journal = corpus.journal(j);
        put_str(out, journal.id);
        put_u32(out, static_cast<std::uint32_t>(journal.titles.size()));
        for (const auto& t : journal.titles) put_str(out, t);
        put_u32(out, journal.is_trade ? 1 : 0);
        put_u32(out, static_cast<std::uint32_t>(journal.predecessor_ids.size()));
        for (const auto& p : journal.predecessor_ids) put_str(out, p);
    }

    put_u64(out, corpus.publication_count());
    for (PubIdx p = 0; p < corpus.publication_count(); ++p) {
        const Publication& pub = corpus.publication(p);
        put_str(out, pub.id);
        put_u32(out, pub.journal);
        put_u32(out, static_cast<std::uint32_t>(pub.year));
        put_str(out, pub.doc_type);
        put_u32(out, static_cast<std::uint32_t>(pub.references.size()));
        for (PubIdx r : pub.references) put_u64(out, r);
    }
    put_u64(out, corpus.canonical_hash());

    auto file = open_output(path);
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) fail(ErrorKind::io, "failed writing '" + path.string() + "'");
}

Corpus load_corpus_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    CacheReader r(buf.str());

    char magic[sizeof(kCacheMagic)];
    r.raw(magic, sizeof(magic));
    if (std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0)
        fail(ErrorKind::parse, "'" + path.string() + "' is not a corpus cache");

    int year = static_cast<int>(r.u32());
    std::set<std::string> doc_types;
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) doc_types.insert(r.str());

    std::vector<JournalRecord> journal_recs;
    std::vector<std::vector<std::string>> titles;
    std::vector<std::vector<std::string>> predecessors;
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        JournalRecord rec;
        rec.id = r.str();
        std::vector<std::string> journal_titles;
        for (std::uint32_t k = 0, t = r.u32(); k < t; ++k) journal_titles.push_back(r.str());
        rec.title = journal_titles.empty() ? std::string() : journal_titles.front();
        rec.is_trade = r.u32() != 0;
        std::vector<std::string> preds;
        for (std::uint32_t k = 0, t = r.u32(); k < t; ++k) preds.push_back(r.str());
        journal_recs.push_back(std::move(rec));
        titles.push_back(std::move(journal_titles));
        predecessors.push_back(std::move(preds));
    }

    std::vector<PublicationRecord> pub_recs;
    std::uint64_t pub_count = r.u64();
    std::vector<std::vector<std::uint64_t>> ref_idx(pub_count);
    for (std::uint64_t i = 0; i < pub_count; ++i) {
        PublicationRecord rec;
        rec.id = r.str();
        std::uint32_t journal = r.u32();
        if (journal >= journal_recs.size()) fail(ErrorKind::parse, "corpus cache journal index out of range");
        rec.journal_id = journal_recs[journal].id;
        rec.year = static_cast<int>(r.u32());
        rec.doc_type = r.str();
        for (std::uint32_t k = 0, n = r.u32(); k < n; ++k) {
            std::uint64_t target = r.u64();
            if (target >= pub_count) fail(ErrorKind::parse, "corpus cache reference out of range");
            ref_idx[i].push_back(target);
        }
        pub_recs.push_back(std::move(rec));
    }
    for (std::uint64_t i = 0; i < pub_count; ++i)
        for (std::uint64_t target : ref_idx[i]) pub_recs[i].references.push_back(pub_recs[target].id);

    std::uint64_t stored_hash = r.u64();
    Corpus corpus = Corpus::build(year, doc_types, journal_recs, pub_recs, nullptr);
    // restore title/predecessor metadata lost in record form
    for (std::size_t i = 0; i < journal_recs.size(); ++i) {
        auto idx = corpus.find_journal(journal_recs[i].id);
        if (!idx) continue;
        corpus.journals_[*idx].titles = titles[i];
        corpus.journals_[*idx].predecessor_ids = predecessors[i];
    }
    if (corpus.canonical_hash() != stored_hash)
        fail(ErrorKind::parse, "'" + path.string() + "' failed its integrity check");
    return corpus;
}

} // namespace snipkit
