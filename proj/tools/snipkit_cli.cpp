/*
 * (C) Copyright 2026 snipkit authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Command-line front end. All engine work goes through the C API in
// snipkit/snipkit.h; this file only parses arguments, moves files around
// and writes the run manifest.

#include <snipkit/snipkit.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitWarnings = 1;
constexpr int kExitError = 2;

struct StringOwner {
    char* value = nullptr;
    ~StringOwner() { snip_string_free(value); }
    std::string str() const { return value ? value : ""; }
};

struct CorpusOwner {
    snip_corpus* handle = nullptr;
    ~CorpusOwner() { snip_corpus_free(handle); }
};

struct SelectionOwner {
    snip_selection* handle = nullptr;
    ~SelectionOwner() { snip_selection_free(handle); }
};

struct TableOwner {
    snip_table* handle = nullptr;
    ~TableOwner() { snip_table_free(handle); }
};

[[noreturn]] void die(const std::string& context) {
    std::cerr << "snipkit: " << context;
    std::string detail = snip_last_error();
    if (!detail.empty()) std::cerr << ": " << detail;
    std::cerr << '\n';
    std::exit(kExitError);
}

void check(snip_status status, const std::string& context) {
    if (status != SNIP_OK) die(context);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) die("cannot write '" + path.string() + "'");
    out << content;
}

std::uint64_t fnv1a_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[1 << 14];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    return hash;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// One manifest per output directory: command line, config snapshot, input
// hashes, tool version and output list.
struct Manifest {
    std::string command;
    fs::path out_dir;
    ordered_json config = ordered_json::object();
    ordered_json inputs = ordered_json::object();
    std::vector<std::string> outputs;

    void add_input(const fs::path& path) {
        inputs[path.string()] = "fnv1a64:" + hex64(fnv1a_file(path));
    }
    void write() const {
        ordered_json j;
        j["tool"] = "snipkit";
        j["version"] = snip_version();
        j["command"] = command;
        j["config"] = config;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["created_utc"] = utc_now();
        write_file(out_dir / "manifest.json", j.dump(2) + "\n");
    }
};

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

SelectionOwner load_selection(const CorpusOwner& corpus, const fs::path& path) {
    SelectionOwner selection;
    check(snip_selection_from_json(corpus.handle, read_file(path).c_str(), &selection.handle),
          "loading citing-journal set from '" + path.string() + "'");
    return selection;
}

int report_warnings(const std::string& report_json, const fs::path& out_dir) {
    auto parsed = nlohmann::json::parse(report_json);
    const auto& errors = parsed.at("record_errors");
    if (errors.empty()) return kExitOk;
    std::string text;
    for (const auto& e : errors)
        text += e.at("file").get<std::string>() + ":" + std::to_string(e.at("line").get<long>()) +
                ": " + e.at("message").get<std::string>() + "\n";
    write_file(out_dir / "warnings.txt", text);
    std::cerr << "snipkit: " << errors.size() << " record warning(s), see "
              << (out_dir / "warnings.txt").string() << '\n';
    return kExitWarnings;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"snipkit - source-normalized journal indicator toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from a key=value config file");

    std::string out_dir = "out";
    int threads = 1;
    app.add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads for per-journal computations")
        ->capture_default_str();

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Build a corpus cache from raw record files");
    std::string journals_path, publications_path, merges_path, doc_types;
    int year = 0;
    ingest->add_option("--journals", journals_path, "journals.csv")->required();
    ingest->add_option("--publications", publications_path, "publications.jsonl")->required();
    ingest->add_option("--merges", merges_path, "merges.csv (journal title changes)");
    ingest->add_option("--year", year, "Year of analysis")->required();
    ingest->add_option("--doc-types", doc_types,
                       "Comma-separated document-type allowlist "
                       "(default: article, conference paper, review)");

    // select
    auto* select = app.add_subcommand("select", "Run the citing-journal selection");
    std::string corpus_path = "out/corpus.bin";
    std::string threshold = "0.20";
    int max_iterations = 1000;
    select->add_option("--corpus", corpus_path, "Corpus cache")->capture_default_str();
    select->add_option("--threshold", threshold, "Minimum share of publications with an active reference")
        ->capture_default_str();
    select->add_option("--max-iterations", max_iterations, "Safety bound on fixed-point rounds")
        ->capture_default_str();

    // compute
    auto* compute = app.add_subcommand("compute", "Compute an indicator table");
    std::string compute_corpus = "out/corpus.bin";
    std::string mode = "snip-revised";
    std::string citing_set_path;
    std::string scores_name = "scores.csv";
    long min_pubs = 100;
    compute->add_option("--corpus", compute_corpus, "Corpus cache")->capture_default_str();
    compute->add_option("--mode", mode,
                        "rip | snip-original | snip-revised | audience-factor | "
                        "fractional-counting | apriori")
        ->capture_default_str();
    compute->add_option("--citing-set", citing_set_path,
                        "selection.json restricting the citing side (default: run the "
                        "selection for the revised family, whole database otherwise)");
    compute->add_option("--min-pubs", min_pubs, "Reporting filter flagged on scores")
        ->capture_default_str();
    compute->add_option("--out", scores_name, "Scores file name")->capture_default_str();

    // compare
    auto* compare = app.add_subcommand("compare", "Compare two score tables");
    std::string table_a, table_b, diff_factor;
    long compare_min_pubs = 100;
    int top_n = 10;
    compare->add_option("--a", table_a, "scores.csv of the indicator under study")->required();
    compare->add_option("--b", table_b, "scores.csv of the reference indicator")->required();
    compare->add_option("--min-pubs", compare_min_pubs,
                        "Only journals with at least this many publications enter the "
                        "correlation and top lists")
        ->capture_default_str();
    compare->add_option("--diff-factor", diff_factor,
                        "Scale factor for the difference column (default: ratio of the "
                        "publication-weighted means)");
    compare->add_option("--top-n", top_n, "Length of the difference tables")->capture_default_str();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic corpus and report on it");
    std::string spec_path;
    bool export_corpus = false;
    simulate->add_option("--spec", spec_path, "Synthetic corpus spec (JSON)")->required();
    simulate->add_flag("--export-corpus", export_corpus,
                       "Also write journals.csv/publications.jsonl for the generated corpus");

    CLI11_PARSE(app, argc, argv);

    Manifest manifest;
    manifest.command = join_args(argc, argv);
    manifest.out_dir = out_dir;
    manifest.config["out_dir"] = out_dir;
    manifest.config["threads"] = threads;
    fs::create_directories(out_dir);

    if (*ingest) {
        manifest.config["year"] = year;
        manifest.config["doc_types"] = doc_types;
        manifest.add_input(journals_path);
        manifest.add_input(publications_path);
        if (!merges_path.empty()) manifest.add_input(merges_path);

        CorpusOwner corpus;
        check(snip_corpus_ingest(journals_path.c_str(), publications_path.c_str(),
                                 merges_path.empty() ? nullptr : merges_path.c_str(), year,
                                 doc_types.empty() ? nullptr : doc_types.c_str(), &corpus.handle),
              "ingesting records");

        fs::path cache = fs::path(out_dir) / "corpus.bin";
        check(snip_corpus_cache_save(corpus.handle, cache.string().c_str()), "writing corpus cache");
        StringOwner report;
        check(snip_corpus_report_json(corpus.handle, &report.value), "serializing ingest report");
        write_file(fs::path(out_dir) / "ingest_report.json", report.str() + "\n");

        uint64_t journals = 0, publications = 0;
        snip_corpus_stats(corpus.handle, &journals, &publications, nullptr);
        std::cout << "ingested " << journals << " journals, " << publications
                  << " publications -> " << cache.string() << '\n';

        manifest.outputs = {"corpus.bin", "ingest_report.json"};
        int rc = report_warnings(report.str(), out_dir);
        if (rc != kExitOk) manifest.outputs.push_back("warnings.txt");
        manifest.write();
        return rc;
    }

    if (*select) {
        manifest.config["threshold"] = threshold;
        manifest.config["max_iterations"] = max_iterations;
        manifest.add_input(corpus_path);

        CorpusOwner corpus;
        check(snip_corpus_cache_load(corpus_path.c_str(), &corpus.handle), "loading corpus cache");
        SelectionOwner selection;
        check(snip_selection_run(corpus.handle, threshold.c_str(), max_iterations, threads,
                                 &selection.handle),
              "selecting citing journals");
        StringOwner json;
        check(snip_selection_to_json(selection.handle, &json.value), "serializing selection");
        write_file(fs::path(out_dir) / "selection.json", json.str() + "\n");

        int iterations = 0;
        uint64_t included = 0;
        snip_selection_stats(selection.handle, &iterations, &included);
        std::cout << "included " << included << " citing journals after " << iterations
                  << " round(s) -> " << (fs::path(out_dir) / "selection.json").string() << '\n';

        manifest.outputs = {"selection.json"};
        manifest.write();
        return kExitOk;
    }

    if (*compute) {
        manifest.config["mode"] = mode;
        manifest.config["min_pubs"] = min_pubs;
        manifest.add_input(compute_corpus);

        CorpusOwner corpus;
        check(snip_corpus_cache_load(compute_corpus.c_str(), &corpus.handle), "loading corpus cache");

        SelectionOwner selection;
        bool revised_family = mode != "rip" && mode != "snip-original";
        if (!citing_set_path.empty()) {
            manifest.add_input(citing_set_path);
            manifest.config["citing_set"] = citing_set_path;
            selection = load_selection(corpus, citing_set_path);
        } else if (revised_family) {
            // the revised family needs a citing-journal set; derive it here
            check(snip_selection_run(corpus.handle, nullptr, 0, threads, &selection.handle),
                  "selecting citing journals");
            StringOwner json;
            check(snip_selection_to_json(selection.handle, &json.value), "serializing selection");
            write_file(fs::path(out_dir) / "selection.json", json.str() + "\n");
            manifest.outputs.push_back("selection.json");
            manifest.config["citing_set"] = "derived";
        } else {
            manifest.config["citing_set"] = "all";
        }

        TableOwner table;
        check(snip_table_compute(corpus.handle, selection.handle, mode.c_str(), min_pubs, threads,
                                 &table.handle),
              "computing scores");
        StringOwner csv;
        check(snip_table_to_csv(table.handle, &csv.value), "serializing scores");
        write_file(fs::path(out_dir) / scores_name, csv.str());

        uint64_t journal_count = 0;
        double weighted_mean = 0;
        snip_table_stats(table.handle, &journal_count, &weighted_mean);
        std::cout << "scored " << journal_count << " journals (publication-weighted mean "
                  << weighted_mean << ") -> " << (fs::path(out_dir) / scores_name).string() << '\n';

        manifest.outputs.push_back(scores_name);
        manifest.write();
        return kExitOk;
    }

    if (*compare) {
        manifest.config["min_pubs"] = compare_min_pubs;
        manifest.config["top_n"] = top_n;
        if (!diff_factor.empty()) manifest.config["diff_factor"] = diff_factor;
        manifest.add_input(table_a);
        manifest.add_input(table_b);

        TableOwner a, b;
        check(snip_table_from_csv(read_file(table_a).c_str(), &a.handle),
              "reading '" + table_a + "'");
        check(snip_table_from_csv(read_file(table_b).c_str(), &b.handle),
              "reading '" + table_b + "'");
        StringOwner json;
        check(snip_compare_json(a.handle, b.handle, compare_min_pubs,
                                diff_factor.empty() ? nullptr : diff_factor.c_str(), top_n,
                                &json.value),
              "comparing tables");
        write_file(fs::path(out_dir) / "comparison.json", json.str() + "\n");

        auto parsed = nlohmann::json::parse(json.str());
        std::cout << "compared " << parsed["n_compared"] << " journals, correlation "
                  << parsed["correlation"] << ", factor " << parsed["diff_factor"] << '\n';
        for (const char* key : {"top_positive", "top_negative"}) {
            std::cout << key << ":\n";
            for (const auto& e : parsed[key])
                std::cout << "  " << e["journal_id"].get<std::string>() << "  diff "
                          << e["diff"].get<double>() << '\n';
        }

        manifest.outputs = {"comparison.json"};
        manifest.write();
        return kExitOk;
    }

    if (*simulate) {
        manifest.add_input(spec_path);

        CorpusOwner corpus;
        StringOwner mu_report, bias_report;
        check(snip_simulate(read_file(spec_path).c_str(), threads, &corpus.handle,
                            &mu_report.value, &bias_report.value),
              "running simulation");
        write_file(fs::path(out_dir) / "mu_report.json", mu_report.str() + "\n");
        manifest.outputs = {"mu_report.json"};
        if (bias_report.value) {
            write_file(fs::path(out_dir) / "bias_report.json", bias_report.str() + "\n");
            manifest.outputs.push_back("bias_report.json");
        }
        if (export_corpus) {
            fs::path journals_csv = fs::path(out_dir) / "journals.csv";
            fs::path pubs_jsonl = fs::path(out_dir) / "publications.jsonl";
            check(snip_corpus_export(corpus.handle, journals_csv.string().c_str(),
                                     pubs_jsonl.string().c_str()),
                  "exporting generated corpus");
            manifest.outputs.push_back("journals.csv");
            manifest.outputs.push_back("publications.jsonl");
        }

        auto parsed = nlohmann::json::parse(mu_report.str());
        for (const auto& f : parsed["fields"])
            std::cout << "field " << f["field"].get<std::string>() << ": mu "
                      << (f.contains("mu") ? std::to_string(f["mu"].get<double>()) : "n/a")
                      << " (predicted " << f["predicted_mu"].get<double>() << ")\n";

        manifest.write();
        return kExitOk;
    }

    return kExitError;
}
