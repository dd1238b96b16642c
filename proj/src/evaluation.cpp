#include "wisse/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace wisse {

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw PearsonError("length mismatch");
    if (x.size() < 2) throw PearsonError("need at least 2 observations");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw PearsonError("correlation undefined for constant input");
    return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

std::string EvalReport::config_key() const {
    return weights + "\t" + comb + "\t" + embedding + "\t" + metric_name(metric);
}

EvalReport evaluate(const STSDataset& dataset, const EmbeddingTable& table,
                    const CorpusStats& stats, const WeightingConfig& cfg, MetricKind kind,
                    const StopwordList* stopwords, unsigned jobs,
                    const std::string& embedding_id) {
    if (dataset.size() == 0) throw PearsonError("empty dataset");

    std::vector<SentenceTokens> flat;
    flat.reserve(dataset.size() * 2);
    for (const auto& [a, b] : dataset.pairs) {
        flat.push_back(a);
        flat.push_back(b);
    }
    auto vectors = embed_batch(flat, table, stats, cfg, stopwords, jobs);

    EvalReport report;
    report.weights = cfg.name();
    report.comb = cfg.combination == Combination::sum ? "sum" : "avg";
    report.embedding = embedding_id.empty() ? table.source_meta() : embedding_id;
    report.metric = kind;
    report.n_pairs = dataset.size();

    std::vector<double> predicted(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto& va = vectors[2 * i];
        const auto& vb = vectors[2 * i + 1];
        auto all_zero = [](const SentenceVector& v) {
            if (v.is_zero()) return true;
            for (double x : v.values)
                if (x != 0.0) return false;
            return true;
        };
        if (all_zero(va) || all_zero(vb)) {
            predicted[i] = 0.0;
            ++report.degenerate_pairs;
            continue;
        }
        predicted[i] = score(va.values, vb.values, kind);
    }
    report.pearson = pearson(predicted, dataset.gold);
    return report;
}

CorpusStats fit_local_stats(const STSDataset& dataset, IdfVariant variant,
                            const StopwordList* strip_at_fit) {
    StatsFitter fitter(FitOptions{variant, strip_at_fit});
    for (const auto& [a, b] : dataset.pairs) {
        fitter.add(a);
        fitter.add(b);
    }
    return fitter.finish();
}

GridSpec GridSpec::parse(std::istream& in) {
    GridSpec grid;
    std::string line;
    std::size_t line_no = 0;
    auto split_csv = [](const std::string& value) {
        std::vector<std::string> out;
        std::istringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(item);
        return out;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("grid line " + std::to_string(line_no) +
                                        ": expected key=values");
        std::string key = line.substr(0, eq);
        auto values = split_csv(line.substr(eq + 1));
        if (key == "weights") {
            grid.weights = values;
        } else if (key == "comb") {
            for (const auto& v : values) {
                if (v == "sum")
                    grid.combinations.push_back(Combination::sum);
                else if (v == "avg")
                    grid.combinations.push_back(Combination::avg);
                else
                    throw std::invalid_argument("grid: unknown comb \"" + v + "\"");
            }
        } else if (key == "metric") {
            for (const auto& v : values) grid.metrics.push_back(parse_metric(v));
        } else if (key == "embeddings") {
            for (const auto& v : values) {
                auto colon = v.find(':');
                if (colon == std::string::npos)
                    grid.embeddings.emplace_back(v, v);  // path doubles as id
                else
                    grid.embeddings.emplace_back(v.substr(0, colon), v.substr(colon + 1));
            }
        } else if (key == "idf_variant") {
            if (values.size() != 1 || (values[0] != "paper" && values[0] != "smoothed"))
                throw std::invalid_argument("grid: idf_variant must be paper or smoothed");
            grid.idf_variant = values[0] == "paper" ? IdfVariant::paper : IdfVariant::smoothed;
        } else {
            throw std::invalid_argument("grid: unknown key \"" + key + "\"");
        }
    }
    if (grid.weights.empty() || grid.combinations.empty() || grid.metrics.empty() ||
        grid.embeddings.empty())
        throw std::invalid_argument("grid: weights, comb, metric and embeddings are all required");
    return grid;
}

std::vector<EvalReport> grid_search(const STSDataset& dataset, const GridSpec& grid,
                                    const TableProvider& tables, const StatsProvider& global_stats,
                                    const StopwordList* stopwords, unsigned jobs) {
    std::vector<EvalReport> reports;

    // Local stats are shared across cells; fitted lazily per variant.
    std::optional<CorpusStats> local;
    auto local_stats = [&]() -> const CorpusStats& {
        if (!local) local = fit_local_stats(dataset, grid.idf_variant);
        return *local;
    };

    for (const auto& weights : grid.weights) {
        for (Combination comb : grid.combinations) {
            for (const auto& [emb_id, emb_path] : grid.embeddings) {
                for (MetricKind metric : grid.metrics) {
                    EvalReport report;
                    report.comb = comb == Combination::sum ? "sum" : "avg";
                    report.embedding = emb_id;
                    report.metric = metric;
                    report.weights = weights;
                    try {
                        WeightingConfig cfg = WeightingConfig::parse_weights(weights);
                        cfg.combination = comb;
                        cfg.idf_variant = grid.idf_variant;
                        cfg.oov_idf_policy = grid.oov_policy;
                        const CorpusStats& stats =
                            cfg.scope == Scope::global && cfg.scheme != Scheme::unweighted
                                ? global_stats()
                                : local_stats();
                        const EmbeddingTable& table = tables(emb_path);
                        report = evaluate(dataset, table, stats, cfg, metric, stopwords, jobs,
                                          emb_id);
                    } catch (const std::exception& e) {
                        report.error = e.what();
                    }
                    reports.push_back(std::move(report));
                }
            }
        }
    }

    std::sort(reports.begin(), reports.end(), [](const EvalReport& a, const EvalReport& b) {
        if (a.ok() != b.ok()) return a.ok();  // errored rows sink to the bottom
        if (a.ok() && a.pearson != b.pearson) return a.pearson > b.pearson;
        return a.config_key() < b.config_key();
    });
    return reports;
}

EvalReport bow_baseline(const STSDataset& dataset, const CorpusStats& stats, TfMode tf_mode,
                        const StopwordList* stopwords, bool strip) {
    if (dataset.size() == 0) throw PearsonError("empty dataset");
    WeightingConfig cfg;
    cfg.scheme = Scheme::tfidf;
    cfg.tf_mode = tf_mode;
    cfg.strip_stopwords = strip;

    auto sparse_vector = [&](const SentenceTokens& s) {
        SentenceTokens stripped;
        const SentenceTokens* input = &s;
        if (strip) {
            stripped = strip_stopwords(s, stopwords ? *stopwords : default_stopwords());
            input = &stripped;
        }
        std::map<std::string, double> vec;
        for (const auto& token : input->tokens) {
            if (vec.count(token)) continue;
            auto w = word_weight(token, *input, stats, cfg);
            if (w) vec.emplace(token, *w);
        }
        return vec;
    };

    auto sparse_cosine = [](const std::map<std::string, double>& a,
                            const std::map<std::string, double>& b, bool& degenerate) {
        double dot = 0.0, na = 0.0, nb = 0.0;
        for (const auto& [t, v] : a) {
            na += v * v;
            auto it = b.find(t);
            if (it != b.end()) dot += v * it->second;
        }
        for (const auto& [t, v] : b) nb += v * v;
        if (na == 0.0 || nb == 0.0) {
            degenerate = true;
            return 0.0;
        }
        return dot / (std::sqrt(na) * std::sqrt(nb));
    };

    EvalReport report;
    report.weights = "bow-" + cfg.name();
    report.comb = "-";
    report.embedding = "bow";
    report.metric = MetricKind::cosine;
    report.n_pairs = dataset.size();

    std::vector<double> predicted(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        bool degenerate = false;
        predicted[i] = sparse_cosine(sparse_vector(dataset.pairs[i].first),
                                     sparse_vector(dataset.pairs[i].second), degenerate);
        if (degenerate) ++report.degenerate_pairs;
    }
    report.pearson = pearson(predicted, dataset.gold);
    return report;
}

namespace {

std::string format_rho(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5f", v);
    return buf;
}

}  // namespace

void write_report_tsv(const std::vector<EvalReport>& reports, std::ostream& out) {
    // Table-4 style layout: one row per config, three metric columns.
    struct Row {
        double best = -2.0;
        std::size_t order = 0;
        std::string cells[3] = {"-", "-", "-"};
        std::string error;
    };
    std::map<std::string, Row> rows;
    std::size_t order = 0;
    for (const auto& r : reports) {
        std::string key = r.weights + "\t" + r.comb + "\t" + r.embedding;
        auto [it, inserted] = rows.try_emplace(key);
        if (inserted) it->second.order = order++;
        if (!r.ok()) {
            it->second.error = r.error;
            continue;
        }
        it->second.cells[static_cast<int>(r.metric)] = format_rho(r.pearson);
        it->second.best = std::max(it->second.best, r.pearson);
    }

    std::vector<std::pair<std::string, const Row*>> ordered;
    ordered.reserve(rows.size());
    for (const auto& [key, row] : rows) ordered.emplace_back(key, &row);
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second->best != b.second->best) return a.second->best > b.second->best;
        return a.first < b.first;
    });

    out << "weights\tcomb\tembedding\tcosine\teuclidean\tmanhattan\terror\n";
    for (const auto& [key, row] : ordered) {
        out << key;
        for (const auto& cell : row->cells) out << '\t' << cell;
        out << '\t' << (row->error.empty() ? "-" : row->error) << '\n';
    }
}

void write_report_jsonl(const std::vector<EvalReport>& reports, std::ostream& out) {
    auto escape = [](const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '"' || c == '\\') r.push_back('\\');
            if (c == '\t') {
                r += "\\t";
                continue;
            }
            r.push_back(c);
        }
        return r;
    };
    for (const auto& r : reports) {
        out << "{\"weights\":\"" << escape(r.weights) << "\",\"comb\":\"" << escape(r.comb)
            << "\",\"embedding\":\"" << escape(r.embedding) << "\",\"metric\":\""
            << metric_name(r.metric) << "\",";
        if (r.ok())
            out << "\"pearson\":" << format_rho(r.pearson);
        else
            out << "\"error\":\"" << escape(r.error) << "\"";
        out << ",\"n_pairs\":" << r.n_pairs << ",\"degenerate_pairs\":" << r.degenerate_pairs
            << "}\n";
    }
}

double weighted_mean(std::span<const double> values, std::span<const double> weights) {
    if (values.size() != weights.size() || values.empty())
        throw std::invalid_argument("weighted_mean: size mismatch or empty");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        num += values[i] * weights[i];
        den += weights[i];
    }
    if (den == 0.0) throw std::invalid_argument("weighted_mean: zero total weight");
    return num / den;
}

}  // namespace wisse
