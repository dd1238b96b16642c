#include "wisse/composer.hpp"

#include <cmath>
#include <thread>
#include <unordered_set>

namespace wisse {

SentenceVector embed_sentence(const SentenceTokens& s, const EmbeddingTable& table,
                              const CorpusStats& stats, const WeightingConfig& cfg,
                              const StopwordList* stopwords) {
    SentenceVector out;
    out.values.assign(table.dimension(), 0.0);

    SentenceTokens stripped;
    const SentenceTokens* input = &s;
    if (cfg.strip_stopwords) {
        stripped = strip_stopwords(s, stopwords ? *stopwords : default_stopwords());
        input = &stripped;
    }

    // Gather contributions first so optional weight normalization sees
    // the whole sentence; accumulation stays left-to-right in doubles.
    struct Contribution {
        std::span<const float> row;
        double weight;
    };
    std::vector<Contribution> contributions;
    contributions.reserve(input->tokens.size());

    std::unordered_set<std::string_view> seen;
    for (const auto& token : input->tokens) {
        if (cfg.dedupe_tokens && !seen.insert(token).second) continue;
        auto row = table.lookup(token);
        if (!row) {
            ++out.skipped_oov;
            continue;
        }
        auto weight = word_weight(token, *input, stats, cfg);
        if (!weight) continue;  // oov_idf_policy = skip
        contributions.push_back({*row, *weight});
    }

    double scale = 1.0;
    if (cfg.l2_normalize_weights) {
        double sq = 0.0;
        for (const auto& c : contributions) sq += c.weight * c.weight;
        if (sq > 0.0) scale = 1.0 / std::sqrt(sq);
    }

    for (const auto& c : contributions) {
        double w = c.weight * scale;
        for (std::size_t k = 0; k < out.values.size(); ++k)
            out.values[k] += w * static_cast<double>(c.row[k]);
        ++out.contributing;
    }

    if (cfg.combination == Combination::avg && out.contributing > 0) {
        double inv = 1.0 / static_cast<double>(out.contributing);
        for (double& v : out.values) v *= inv;
    }
    return out;
}

std::vector<SentenceVector> embed_batch(const std::vector<SentenceTokens>& sentences,
                                        const EmbeddingTable& table, const CorpusStats& stats,
                                        const WeightingConfig& cfg, const StopwordList* stopwords,
                                        unsigned jobs) {
    std::vector<SentenceVector> out(sentences.size());
    if (jobs <= 1 || sentences.size() < 2) {
        for (std::size_t i = 0; i < sentences.size(); ++i)
            out[i] = embed_sentence(sentences[i], table, stats, cfg, stopwords);
        return out;
    }

    unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(sentences.size()));
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        threads.emplace_back([&, t] {
            for (std::size_t i = t; i < sentences.size(); i += workers)
                out[i] = embed_sentence(sentences[i], table, stats, cfg, stopwords);
        });
    }
    for (auto& th : threads) th.join();
    return out;
}

}  // namespace wisse
