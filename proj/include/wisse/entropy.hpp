#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "wisse/text.hpp"

namespace wisse {

enum class IdfVariant : std::uint8_t { paper, smoothed };
enum class Scheme : std::uint8_t { tfidf, idf_only, unweighted };
enum class TfMode : std::uint8_t { binary, frequency, log };
enum class Scope : std::uint8_t { global, local };
enum class Combination : std::uint8_t { sum, avg };
enum class OovIdfPolicy : std::uint8_t { df_one_fallback, skip };

struct WeightingConfig {
    Scheme scheme = Scheme::tfidf;
    TfMode tf_mode = TfMode::frequency;
    Scope scope = Scope::local;
    bool strip_stopwords = false;
    Combination combination = Combination::sum;
    IdfVariant idf_variant = IdfVariant::paper;
    OovIdfPolicy oov_idf_policy = OovIdfPolicy::df_one_fallback;
    bool dedupe_tokens = true;          // series over token types, not occurrences
    bool l2_normalize_weights = false;  // tool-compatibility escape hatch
    double weight_scale = 1.0;          // global multiplier on every word weight

    /// Table-3 style name, e.g. "loc-tfidf-bin-st" or "unweighted".
    std::string name() const;

    /// Parse a Table-3 style weights string ("glob-tfidf-log-st",
    /// "loc-idf", "unweighted", ...). Throws std::invalid_argument.
    static WeightingConfig parse_weights(const std::string& spec);
};

struct StatsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fitted entropy model: document frequencies N_w over N_S documents
/// plus the corpus-wide token count F. IDF is derived, not stored.
class CorpusStats {
public:
    CorpusStats(std::uint64_t n_sentences, std::uint64_t total_tokens,
                std::unordered_map<std::string, std::uint64_t> doc_freq, IdfVariant variant);

    std::uint64_t n_sentences() const { return n_sentences_; }
    std::uint64_t total_tokens() const { return total_tokens_; }
    IdfVariant variant() const { return variant_; }
    const std::unordered_map<std::string, std::uint64_t>& doc_freq() const { return doc_freq_; }

    std::optional<std::uint64_t> doc_freq_of(const std::string& token) const;

    /// paper: ln(N_S / N_w); smoothed: ln((1+N_S)/(1+N_w)) + 1.
    double idf_from_df(std::uint64_t df) const;

    /// IDF for a fitted token; unseen tokens resolve per policy
    /// (df_one_fallback treats them as df = 1, skip yields nullopt).
    std::optional<double> idf(const std::string& token,
                              OovIdfPolicy policy = OovIdfPolicy::df_one_fallback) const;

private:
    std::uint64_t n_sentences_;
    std::uint64_t total_tokens_;
    std::unordered_map<std::string, std::uint64_t> doc_freq_;
    IdfVariant variant_;
};

struct FitOptions {
    IdfVariant variant = IdfVariant::paper;
    /// When set, stopwords are removed before counting (both doc_freq
    /// and F). Default fits over the full text; stripping normally
    /// happens at composition time.
    const StopwordList* strip_at_fit = nullptr;
};

/// Streaming fold over tokenized documents. doc_freq counts type
/// presence per document; F counts token occurrences.
class StatsFitter {
public:
    explicit StatsFitter(FitOptions opts = {}) : opts_(opts) {}
    void add(const SentenceTokens& doc);
    CorpusStats finish() const;  // throws StatsError on empty corpus

private:
    FitOptions opts_;
    std::uint64_t n_sentences_ = 0;
    std::uint64_t total_tokens_ = 0;
    std::unordered_map<std::string, std::uint64_t> doc_freq_;
};

CorpusStats fit_stats(std::istream& corpus, FitOptions opts = {},
                      const TokenizerOptions& tok = {});

/// H(S) = ln N_S.
double sentence_entropy(const CorpusStats& stats);

/// H(S|w) = ln N_w; unseen tokens give 0 under df_one_fallback and
/// nullopt under skip.
std::optional<double> word_conditional_entropy(const CorpusStats& stats,
                                               const std::string& token,
                                               OovIdfPolicy policy = OovIdfPolicy::df_one_fallback);

/// I(V,S) = sum_w (f_w / F) (ln N_S - ln N_w) over corpus term
/// frequencies. Nonnegative.
double corpus_mutual_information(const CorpusStats& stats,
                                 const std::unordered_map<std::string, std::uint64_t>& term_freq);

/// The single nonzero TF component for `token` in `sentence`:
/// frequency -> f/F, binary -> (f>0 ? 1/F : 0), log -> ln(f+1)/F.
double tf_value(const std::string& token, const SentenceTokens& sentence, TfMode mode,
                std::uint64_t total_tokens);

/// Scalar coefficient <tf, idf> for one word of a sentence. Unweighted
/// scheme gives 1.0; unseen tokens follow cfg.oov_idf_policy (skip ->
/// nullopt, meaning the contribution is omitted).
std::optional<double> word_weight(const std::string& token, const SentenceTokens& sentence,
                                  const CorpusStats& stats, const WeightingConfig& cfg);

/// Versioned binary container: "WISSESTATS", version byte, N_S and F
/// as u64 LE, token count u64 LE, then length-prefixed (u32 LE) token
/// bytes + u64 LE doc_freq per record. IDF is recomputed at load.
void save_stats(const CorpusStats& stats, std::ostream& out);
CorpusStats load_stats(std::istream& in, IdfVariant variant = IdfVariant::paper);

}  // namespace wisse
