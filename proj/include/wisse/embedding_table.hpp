#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace wisse {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Immutable token -> dense vector store loaded from a pretrained
/// embedding file. Rows are stored contiguously (row-major) at single
/// precision; downstream arithmetic widens to double.
class EmbeddingTable {
public:
    EmbeddingTable(std::size_t dimension,
                   std::unordered_map<std::string, std::size_t> vocab,
                   std::vector<float> data, std::string source_meta,
                   std::size_t duplicate_warnings = 0);

    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return vocab_.size(); }
    const std::string& source_meta() const { return source_meta_; }
    std::size_t duplicate_warnings() const { return duplicate_warnings_; }

    /// Row for `token`, or nullopt when absent. Never mutates the table.
    std::optional<std::span<const float>> lookup(const std::string& token) const;

    bool contains(const std::string& token) const { return vocab_.count(token) != 0; }

    const std::unordered_map<std::string, std::size_t>& vocab() const { return vocab_; }

    std::span<const float> row(std::size_t index) const;

private:
    std::size_t dim_;
    std::unordered_map<std::string, std::size_t> vocab_;
    std::vector<float> data_;
    std::string source_meta_;
    std::size_t duplicate_warnings_ = 0;
};

/// Parse the text format: one record per line, "token v1 ... vd",
/// single-space separated. A "count dim" header line is honored when
/// has_header is set; load_embeddings_auto detects it.
EmbeddingTable load_text_embeddings(std::istream& source, bool has_header,
                                    const std::string& source_meta = "text");

/// Parse the word2vec binary format: ASCII "<vocab> <dim>\n" header,
/// then per record the token bytes, one space, dim little-endian
/// float32 values, and an optional trailing newline byte.
EmbeddingTable load_word2vec_binary(std::istream& source,
                                    const std::string& source_meta = "word2vec-bin");

/// Text loader with header auto-detection (first line of exactly two
/// integer fields is treated as a header).
EmbeddingTable load_embeddings_auto(std::istream& source,
                                    const std::string& source_meta = "text");

/// Inverse of load_text_embeddings; rows keep enough digits for a
/// 1e-6 per-component round trip.
void save_text_embeddings(const EmbeddingTable& table, std::ostream& out,
                          bool write_header = true);

}  // namespace wisse
