#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

namespace wisse {

struct SentenceTokens {
    std::vector<std::string> tokens;
    std::string raw;
};

struct StopwordList {
    std::unordered_set<std::string> words;
    std::string source;  // "built-in" or a file path

    bool contains(const std::string& token) const { return words.count(token) != 0; }
};

struct TokenizerOptions {
    std::size_t min_token_len = 1;  // 2 gives scikit-compatible behavior
};

/// Lowercase and split on maximal runs of non-alphanumeric characters.
/// Multi-byte UTF-8 sequences count as word characters; ASCII is
/// classified and lowercased exactly. Invalid UTF-8 raises ParseError
/// with the byte offset.
SentenceTokens tokenize(const std::string& text, const TokenizerOptions& opts = {});

/// Order-preserving removal of tokens present in the list.
SentenceTokens strip_stopwords(const SentenceTokens& s, const StopwordList& list);

/// The embedded default English list (318 entries).
const StopwordList& default_stopwords();

/// One lowercase token per line.
StopwordList load_stopwords(std::istream& in, const std::string& source);

struct CorpusReader {
    std::size_t documents = 0;
    std::size_t tokens = 0;

    /// Streams one tokenized document per input line; counters update
    /// as lines are consumed.
    void for_each(std::istream& in, const std::function<void(const SentenceTokens&)>& fn,
                  const TokenizerOptions& opts = {});
};

struct STSDataset {
    std::vector<std::pair<SentenceTokens, SentenceTokens>> pairs;
    std::vector<double> gold;

    std::size_t size() const { return pairs.size(); }
};

enum class DatasetFormat { semeval, sick };

/// semeval: input lines "a<TAB>b" plus a gold file of one score per
/// line. sick: single TSV with a header naming pair_ID, sentence_A,
/// sentence_B, relatedness_score. Gold scores must lie in [0, 5].
STSDataset load_sts_dataset(std::istream& input, std::istream* gold, DatasetFormat format,
                            const TokenizerOptions& opts = {});

}  // namespace wisse
