#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wisse/composer.hpp"
#include "wisse/metrics.hpp"

namespace wisse {

struct PearsonError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Sample Pearson correlation. Throws PearsonError for constant input
/// or length mismatch / length < 2.
double pearson(std::span<const double> x, std::span<const double> y);

struct EvalReport {
    std::string weights;    // Table-3 style config name
    std::string comb;       // "sum" | "avg"
    std::string embedding;  // source id
    MetricKind metric = MetricKind::cosine;
    double pearson = 0.0;
    std::size_t n_pairs = 0;
    std::size_t degenerate_pairs = 0;
    std::string error;  // nonempty when the cell failed

    bool ok() const { return error.empty(); }
    std::string config_key() const;
};

/// Score every pair with the composed vectors and correlate against
/// gold. Degenerate (zero-vector) pairs score 0 and are counted.
EvalReport evaluate(const STSDataset& dataset, const EmbeddingTable& table,
                    const CorpusStats& stats, const WeightingConfig& cfg, MetricKind kind,
                    const StopwordList* stopwords = nullptr, unsigned jobs = 1,
                    const std::string& embedding_id = "");

/// Fit entropy statistics over the dataset itself, one document per
/// sentence side.
CorpusStats fit_local_stats(const STSDataset& dataset, IdfVariant variant,
                            const StopwordList* strip_at_fit = nullptr);

struct GridSpec {
    std::vector<std::string> weights;                            // Table-3 weight strings
    std::vector<Combination> combinations;                       // sum / avg
    std::vector<MetricKind> metrics;                             // per-cell metric kinds
    std::vector<std::pair<std::string, std::string>> embeddings; // (id, path)
    IdfVariant idf_variant = IdfVariant::paper;
    OovIdfPolicy oov_policy = OovIdfPolicy::df_one_fallback;

    /// Parse "key=v1,v2" lines: keys weights, comb, metric,
    /// embeddings (id:path entries).
    static GridSpec parse(std::istream& in);
};

using TableProvider = std::function<const EmbeddingTable&(const std::string& path)>;
/// Yields global stats when any grid cell needs Scope::global; may be
/// null when the grid is all-local.
using StatsProvider = std::function<const CorpusStats&()>;

/// One report per grid cell per metric kind, sorted by pearson
/// descending, ties broken lexicographically on the config key.
/// Unresolvable cells are recorded as errored rows; the run continues.
std::vector<EvalReport> grid_search(const STSDataset& dataset, const GridSpec& grid,
                                    const TableProvider& tables, const StatsProvider& global_stats,
                                    const StopwordList* stopwords = nullptr, unsigned jobs = 1);

/// Sparse |V|-dimensional TF-IDF vectors compared with cosine: the
/// BoW baseline.
EvalReport bow_baseline(const STSDataset& dataset, const CorpusStats& stats, TfMode tf_mode,
                        const StopwordList* stopwords = nullptr, bool strip = false);

/// TSV report mirroring the paper-style column layout; one row per
/// (weights, comb, embedding) with the three metric correlations,
/// 5 decimal places.
void write_report_tsv(const std::vector<EvalReport>& reports, std::ostream& out);

/// One JSON object per line, same fields as the TSV.
void write_report_jsonl(const std::vector<EvalReport>& reports, std::ostream& out);

/// Weighted mean of per-dataset correlations (weights = pair counts).
double weighted_mean(std::span<const double> values, std::span<const double> weights);

}  // namespace wisse
