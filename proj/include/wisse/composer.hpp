#pragma once

#include <cstddef>
#include <vector>

#include "wisse/embedding_table.hpp"
#include "wisse/entropy.hpp"
#include "wisse/text.hpp"

namespace wisse {

struct SentenceVector {
    std::vector<double> values;
    std::size_t contributing = 0;  // tokens with an embedding and an applied weight
    std::size_t skipped_oov = 0;   // tokens without an embedding

    bool is_zero() const { return contributing == 0; }
};

/// Weighted series of word embeddings: accumulate weight * x_w over
/// the sentence tokens in surface order, doubles, fixed left-to-right.
/// combination = avg divides by `contributing` (skipped when zero).
SentenceVector embed_sentence(const SentenceTokens& s, const EmbeddingTable& table,
                              const CorpusStats& stats, const WeightingConfig& cfg,
                              const StopwordList* stopwords = nullptr);

/// Element-wise embed_sentence; output order matches input order and
/// equals the sequential loop bit for bit regardless of `jobs`.
std::vector<SentenceVector> embed_batch(const std::vector<SentenceTokens>& sentences,
                                        const EmbeddingTable& table, const CorpusStats& stats,
                                        const WeightingConfig& cfg,
                                        const StopwordList* stopwords = nullptr,
                                        unsigned jobs = 1);

}  // namespace wisse
