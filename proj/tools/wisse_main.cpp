#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wisse/composer.hpp"
#include "wisse/embedding_table.hpp"
#include "wisse/entropy.hpp"
#include "wisse/evaluation.hpp"
#include "wisse/metrics.hpp"
#include "wisse/text.hpp"

namespace {

using namespace wisse;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;   // data / model error
constexpr int kExitUsage = 2;  // usage / path error

struct PathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_or_throw(const std::string& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw PathError("cannot open " + path);
    return in;
}

std::ofstream open_out_or_throw(const std::string& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw PathError("cannot open " + path + " for writing");
    return out;
}

struct CommonOpts {
    std::string embeddings_path;
    std::string embeddings_format = "text";
    std::string stats_path;
    std::string stopwords_path;
    std::string weights = "loc-tfidf";
    std::string comb = "sum";
    std::string metric = "cosine";
    std::string idf_variant = "paper";
    std::string oov = "fallback";
    unsigned jobs = 1;
};

EmbeddingTable load_embeddings(const CommonOpts& opts) {
    bool binary = opts.embeddings_format == "word2vec-bin";
    auto in = open_or_throw(opts.embeddings_path, binary);
    if (binary) return load_word2vec_binary(in, opts.embeddings_path);
    return load_embeddings_auto(in, opts.embeddings_path);
}

IdfVariant parse_variant(const std::string& v) {
    if (v == "paper") return IdfVariant::paper;
    if (v == "smoothed") return IdfVariant::smoothed;
    throw std::invalid_argument("unknown idf variant \"" + v + "\"");
}

WeightingConfig build_config(const CommonOpts& opts) {
    WeightingConfig cfg = WeightingConfig::parse_weights(opts.weights);
    cfg.combination = opts.comb == "avg" ? Combination::avg : Combination::sum;
    cfg.idf_variant = parse_variant(opts.idf_variant);
    cfg.oov_idf_policy = opts.oov == "skip" ? OovIdfPolicy::skip : OovIdfPolicy::df_one_fallback;
    return cfg;
}

StopwordList resolve_stopwords(const CommonOpts& opts) {
    if (opts.stopwords_path.empty()) return default_stopwords();
    auto in = open_or_throw(opts.stopwords_path);
    return load_stopwords(in, opts.stopwords_path);
}

STSDataset load_dataset(const std::string& dataset_path, const std::string& gold_path,
                        const std::string& format) {
    auto in = open_or_throw(dataset_path);
    if (format == "sick") return load_sts_dataset(in, nullptr, DatasetFormat::sick);
    if (gold_path.empty()) throw PathError("semeval format requires --gold");
    auto gold = open_or_throw(gold_path);
    return load_sts_dataset(in, &gold, DatasetFormat::semeval);
}

CorpusStats resolve_stats(const CommonOpts& opts, const WeightingConfig& cfg,
                          const STSDataset* dataset) {
    if (cfg.scope == Scope::global || dataset == nullptr) {
        if (opts.stats_path.empty())
            throw PathError("this weighting scope requires --stats (run fit-weights first)");
        auto in = open_or_throw(opts.stats_path, true);
        return load_stats(in, cfg.idf_variant);
    }
    return fit_local_stats(*dataset, cfg.idf_variant);
}

std::vector<MetricKind> resolve_metrics(const std::string& metric) {
    if (metric == "all")
        return {MetricKind::cosine, MetricKind::euclidean, MetricKind::manhattan};
    return {parse_metric(metric)};
}

int cmd_fit_weights(const CommonOpts& opts, const std::string& corpus_path,
                    const std::string& out_path) {
    auto corpus = open_or_throw(corpus_path);
    CorpusStats stats = fit_stats(corpus, FitOptions{parse_variant(opts.idf_variant)});
    if (!out_path.empty()) {
        auto out = open_out_or_throw(out_path, true);
        save_stats(stats, out);
    }
    std::cout << "N_S=" << stats.n_sentences() << " |V|=" << stats.doc_freq().size()
              << " F=" << stats.total_tokens() << "\n";
    return kExitOk;
}

void write_sentence_tsv(std::ostream& out, std::size_t index, const SentenceVector& v) {
    out << index << '\t' << v.contributing;
    char buf[48];
    for (double x : v.values) {
        std::snprintf(buf, sizeof(buf), "%.9g", x);
        out << '\t' << buf;
    }
    out << '\n';
}

int cmd_embed(const CommonOpts& opts, const std::string& input_path,
              const std::string& out_path) {
    auto table = load_embeddings(opts);
    WeightingConfig cfg = build_config(opts);
    auto stopwords = resolve_stopwords(opts);

    auto input = open_or_throw(input_path);
    std::vector<SentenceTokens> sentences;
    std::string line;
    while (std::getline(input, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        sentences.push_back(tokenize(line));
    }

    std::optional<CorpusStats> stats;
    if (cfg.scheme == Scheme::unweighted && opts.stats_path.empty()) {
        // weights are constant; a vacuous one-document model suffices
        StatsFitter fitter;
        fitter.add(SentenceTokens{{"_"}, "_"});
        stats = fitter.finish();
    } else {
        if (opts.stats_path.empty()) throw PathError("embed requires --stats");
        auto in = open_or_throw(opts.stats_path, true);
        stats = load_stats(in, cfg.idf_variant);
    }

    auto vectors = embed_batch(sentences, table, *stats, cfg, &stopwords, opts.jobs);
    std::ostringstream buf;
    for (std::size_t i = 0; i < vectors.size(); ++i) write_sentence_tsv(buf, i, vectors[i]);
    if (out_path.empty()) {
        std::cout << buf.str();
    } else {
        auto out = open_out_or_throw(out_path);
        out << buf.str();
    }
    return kExitOk;
}

int cmd_sim(const CommonOpts& opts, const std::string& input_path) {
    auto table = load_embeddings(opts);
    WeightingConfig cfg = build_config(opts);
    auto stopwords = resolve_stopwords(opts);
    MetricKind kind = parse_metric(opts.metric == "all" ? "cosine" : opts.metric);

    auto input = open_or_throw(input_path);
    std::vector<std::pair<SentenceTokens, SentenceTokens>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected a<TAB>b");
        pairs.emplace_back(tokenize(line.substr(0, tab)), tokenize(line.substr(tab + 1)));
    }

    std::optional<CorpusStats> stats;
    if (!opts.stats_path.empty()) {
        auto in = open_or_throw(opts.stats_path, true);
        stats = load_stats(in, cfg.idf_variant);
    } else {
        // local fit over the pair sentences themselves
        StatsFitter fitter(FitOptions{cfg.idf_variant});
        for (const auto& [a, b] : pairs) {
            fitter.add(a);
            fitter.add(b);
        }
        stats = fitter.finish();
    }

    char buf[32];
    for (const auto& [a, b] : pairs) {
        auto va = embed_sentence(a, table, *stats, cfg, &stopwords);
        auto vb = embed_sentence(b, table, *stats, cfg, &stopwords);
        double s = (va.is_zero() || vb.is_zero()) ? 0.0 : score(va.values, vb.values, kind);
        std::snprintf(buf, sizeof(buf), "%.5f", s);
        std::cout << buf << "\n";
    }
    return kExitOk;
}

int cmd_eval(const CommonOpts& opts, const std::string& dataset_path,
             const std::string& gold_path, const std::string& format) {
    auto table = load_embeddings(opts);
    WeightingConfig cfg = build_config(opts);
    auto stopwords = resolve_stopwords(opts);
    auto dataset = load_dataset(dataset_path, gold_path, format);
    CorpusStats stats = resolve_stats(opts, cfg, &dataset);

    for (MetricKind kind : resolve_metrics(opts.metric)) {
        auto report = evaluate(dataset, table, stats, cfg, kind, &stopwords, opts.jobs,
                               opts.embeddings_path);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12f", report.pearson);
        std::cout << metric_name(kind) << "\t" << buf << "\tn=" << report.n_pairs
                  << "\tdegenerate=" << report.degenerate_pairs << "\n";
    }
    return kExitOk;
}

int cmd_grid(const CommonOpts& opts, const std::string& dataset_path,
             const std::string& gold_path, const std::string& format,
             const std::string& grid_path, const std::string& out_path,
             const std::string& jsonl_path) {
    auto grid_in = open_or_throw(grid_path);
    GridSpec grid = GridSpec::parse(grid_in);
    grid.idf_variant = parse_variant(opts.idf_variant);
    auto stopwords = resolve_stopwords(opts);
    auto dataset = load_dataset(dataset_path, gold_path, format);

    std::map<std::string, EmbeddingTable> table_cache;
    TableProvider tables = [&](const std::string& path) -> const EmbeddingTable& {
        auto it = table_cache.find(path);
        if (it != table_cache.end()) return it->second;
        bool binary = path.ends_with(".bin");
        auto in = open_or_throw(path, binary);
        EmbeddingTable t = binary ? load_word2vec_binary(in, path) : load_embeddings_auto(in, path);
        return table_cache.emplace(path, std::move(t)).first->second;
    };

    std::optional<CorpusStats> global;
    StatsProvider global_stats = [&]() -> const CorpusStats& {
        if (!global) {
            if (opts.stats_path.empty())
                throw StatsError("grid contains global cells; pass --stats");
            auto in = open_or_throw(opts.stats_path, true);
            global = load_stats(in, grid.idf_variant);
        }
        return *global;
    };

    auto reports = grid_search(dataset, grid, tables, global_stats, &stopwords, opts.jobs);
    if (out_path.empty()) {
        write_report_tsv(reports, std::cout);
    } else {
        auto out = open_out_or_throw(out_path);
        write_report_tsv(reports, out);
    }
    if (!jsonl_path.empty()) {
        auto out = open_out_or_throw(jsonl_path);
        write_report_jsonl(reports, out);
    }
    return kExitOk;
}

int cmd_bow_baseline(const CommonOpts& opts, const std::string& dataset_path,
                     const std::string& gold_path, const std::string& format,
                     const std::string& tf, bool strip) {
    auto dataset = load_dataset(dataset_path, gold_path, format);
    IdfVariant variant = parse_variant(opts.idf_variant);
    std::optional<CorpusStats> stats;
    if (!opts.stats_path.empty()) {
        auto in = open_or_throw(opts.stats_path, true);
        stats = load_stats(in, variant);
    } else {
        stats = fit_local_stats(dataset, variant);
    }
    TfMode mode = TfMode::binary;
    if (tf == "frequency") mode = TfMode::frequency;
    else if (tf == "log") mode = TfMode::log;
    else if (tf != "binary") throw std::invalid_argument("unknown tf mode \"" + tf + "\"");

    auto stopwords = resolve_stopwords(opts);
    auto report = bow_baseline(dataset, *stats, mode, &stopwords, strip);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5f", report.pearson);
    std::cout << "cosine\t" << buf << "\tn=" << report.n_pairs
              << "\tdegenerate=" << report.degenerate_pairs << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"WISSE: entropy-weighted sentence embeddings and STS evaluation"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string corpus_path, dataset_path, gold_path, format = "semeval";
    std::string input_path, out_path, grid_path, jsonl_path, tf_mode = "binary";
    bool strip = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--embeddings", opts.embeddings_path);
        cmd->add_option("--embeddings-format", opts.embeddings_format)
            ->check(CLI::IsMember({"text", "word2vec-bin"}));
        cmd->add_option("--stats", opts.stats_path);
        cmd->add_option("--stopwords", opts.stopwords_path);
        cmd->add_option("--weights", opts.weights);
        cmd->add_option("--comb", opts.comb)->check(CLI::IsMember({"sum", "avg"}));
        cmd->add_option("--metric", opts.metric)
            ->check(CLI::IsMember({"cosine", "euclidean", "manhattan", "all"}));
        cmd->add_option("--idf-variant", opts.idf_variant)
            ->check(CLI::IsMember({"paper", "smoothed"}));
        cmd->add_option("--oov", opts.oov)->check(CLI::IsMember({"fallback", "skip"}));
        cmd->add_option("--jobs", opts.jobs);
        cmd->add_option("--out", out_path);
    };

    auto* fit = app.add_subcommand("fit-weights", "Fit entropy statistics over a corpus");
    add_common(fit);
    fit->add_option("--corpus", corpus_path)->required();

    auto* embed = app.add_subcommand("embed", "Embed sentences, one per input line");
    add_common(embed);
    embed->add_option("--input", input_path)->required();

    auto* sim = app.add_subcommand("sim", "Score TAB-separated sentence pairs");
    add_common(sim);
    sim->add_option("--input", input_path)->required();

    auto* eval = app.add_subcommand("eval", "Evaluate a dataset against gold scores");
    add_common(eval);
    eval->add_option("--dataset", dataset_path)->required();
    eval->add_option("--gold", gold_path);
    eval->add_option("--format", format)->check(CLI::IsMember({"semeval", "sick"}));

    auto* grid = app.add_subcommand("grid", "Run a hyperparameter grid and rank results");
    add_common(grid);
    grid->add_option("--dataset", dataset_path)->required();
    grid->add_option("--gold", gold_path);
    grid->add_option("--format", format)->check(CLI::IsMember({"semeval", "sick"}));
    grid->add_option("--grid", grid_path)->required();
    grid->add_option("--jsonl", jsonl_path);

    auto* bow = app.add_subcommand("bow-baseline", "Sparse TF-IDF bag-of-words baseline");
    add_common(bow);
    bow->add_option("--dataset", dataset_path)->required();
    bow->add_option("--gold", gold_path);
    bow->add_option("--format", format)->check(CLI::IsMember({"semeval", "sick"}));
    bow->add_option("--tf", tf_mode)->check(CLI::IsMember({"binary", "frequency", "log"}));
    bow->add_flag("--strip-stopwords", strip);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (fit->parsed()) return cmd_fit_weights(opts, corpus_path, out_path);
        if (embed->parsed()) return cmd_embed(opts, input_path, out_path);
        if (sim->parsed()) return cmd_sim(opts, input_path);
        if (eval->parsed()) return cmd_eval(opts, dataset_path, gold_path, format);
        if (grid->parsed())
            return cmd_grid(opts, dataset_path, gold_path, format, grid_path, out_path,
                            jsonl_path);
        if (bow->parsed())
            return cmd_bow_baseline(opts, dataset_path, gold_path, format, tf_mode, strip);
    } catch (const PathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
