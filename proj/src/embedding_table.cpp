#include "wisse/embedding_table.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

namespace wisse {

namespace {

bool parse_float(std::string_view field, float& out) {
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && std::isfinite(out);
}

bool is_integer_field(std::string_view field) {
    if (field.empty()) return false;
    for (char c : field)
        if (c < '0' || c > '9') return false;
    return true;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t next = line.find(' ', pos);
        if (next == std::string_view::npos) next = line.size();
        if (next > pos) out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dimension,
                               std::unordered_map<std::string, std::size_t> vocab,
                               std::vector<float> data, std::string source_meta,
                               std::size_t duplicate_warnings)
    : dim_(dimension),
      vocab_(std::move(vocab)),
      data_(std::move(data)),
      source_meta_(std::move(source_meta)),
      duplicate_warnings_(duplicate_warnings) {
    if (dim_ == 0) throw ParseError("embedding dimension must be positive");
    if (data_.size() != vocab_.size() * dim_)
        throw ParseError("embedding data size does not match vocab * dimension");
    for (float v : data_)
        if (!std::isfinite(v)) throw ParseError("non-finite embedding value");
}

std::optional<std::span<const float>> EmbeddingTable::lookup(const std::string& token) const {
    auto it = vocab_.find(token);
    if (it == vocab_.end()) return std::nullopt;
    return row(it->second);
}

std::span<const float> EmbeddingTable::row(std::size_t index) const {
    return {data_.data() + index * dim_, dim_};
}

namespace {

EmbeddingTable load_text_impl(std::istream& source, int header_mode,
                              const std::string& source_meta) {
    // header_mode: 0 = none, 1 = required, 2 = auto-detect
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    std::size_t declared_count = 0;
    bool have_header = false;

    std::unordered_map<std::string, std::size_t> vocab;
    std::vector<float> data;
    std::size_t duplicates = 0;

    bool first_data_line = true;
    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        auto fields = split_spaces(line);
        if (first_data_line && header_mode != 0) {
            bool looks_like_header =
                fields.size() == 2 && is_integer_field(fields[0]) && is_integer_field(fields[1]);
            if (header_mode == 1 && !looks_like_header)
                throw ParseError("line 1: expected \"<count> <dim>\" header");
            if (looks_like_header) {
                declared_count = std::stoull(std::string(fields[0]));
                dim = std::stoull(std::string(fields[1]));
                if (dim == 0) throw ParseError("line 1: header dimension must be positive");
                have_header = true;
                first_data_line = false;
                data.reserve(declared_count * dim);
                continue;
            }
        }

        if (fields.size() < 2)
            throw ParseError("line " + std::to_string(line_no) + ": expected token and values");
        if (dim == 0) dim = fields.size() - 1;
        if (fields.size() - 1 != dim)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(dim) + " values, got " +
                             std::to_string(fields.size() - 1));
        first_data_line = false;

        std::string token(fields[0]);
        if (vocab.count(token)) {
            ++duplicates;  // keep first occurrence
            continue;
        }
        vocab.emplace(std::move(token), vocab.size());
        for (std::size_t i = 1; i < fields.size(); ++i) {
            float v;
            if (!parse_float(fields[i], v))
                throw ParseError("line " + std::to_string(line_no) + ": bad value \"" +
                                 std::string(fields[i]) + "\"");
            data.push_back(v);
        }
    }

    if (vocab.empty() && !(have_header && declared_count == 0))
        throw ParseError("empty embedding file");
    if (have_header && vocab.size() + duplicates != declared_count)
        throw ParseError("header declared " + std::to_string(declared_count) +
                         " records, file has " + std::to_string(vocab.size() + duplicates));
    if (dim == 0) throw ParseError("empty embedding file");
    return EmbeddingTable(dim, std::move(vocab), std::move(data), source_meta, duplicates);
}

}  // namespace

EmbeddingTable load_text_embeddings(std::istream& source, bool has_header,
                                    const std::string& source_meta) {
    return load_text_impl(source, has_header ? 1 : 0, source_meta);
}

EmbeddingTable load_embeddings_auto(std::istream& source, const std::string& source_meta) {
    return load_text_impl(source, 2, source_meta);
}

EmbeddingTable load_word2vec_binary(std::istream& source, const std::string& source_meta) {
    std::string header;
    if (!std::getline(source, header)) throw ParseError("missing word2vec header");
    std::size_t vocab_size = 0, dim = 0;
    {
        std::istringstream hs(header);
        std::string a, b, extra;
        if (!(hs >> a >> b) || (hs >> extra) || !is_integer_field(a) || !is_integer_field(b))
            throw ParseError("unparseable word2vec header: \"" + header + "\"");
        vocab_size = std::stoull(a);
        dim = std::stoull(b);
    }
    if (dim == 0) throw ParseError("word2vec header dimension must be positive");

    std::unordered_map<std::string, std::size_t> vocab;
    vocab.reserve(vocab_size);
    std::vector<float> data;
    data.reserve(vocab_size * dim);
    std::size_t duplicates = 0;

    for (std::size_t rec = 0; rec < vocab_size; ++rec) {
        std::string token;
        int ch;
        // optional record separator newline from the previous record
        while ((ch = source.get()) == '\n') {
        }
        while (ch != ' ' && ch != std::istream::traits_type::eof()) {
            token.push_back(static_cast<char>(ch));
            ch = source.get();
        }
        if (ch == std::istream::traits_type::eof())
            throw ParseError("truncated word2vec stream at record " + std::to_string(rec));

        std::vector<float> vec(dim);
        source.read(reinterpret_cast<char*>(vec.data()),
                    static_cast<std::streamsize>(dim * sizeof(float)));
        if (static_cast<std::size_t>(source.gcount()) != dim * sizeof(float))
            throw ParseError("truncated word2vec stream at record " + std::to_string(rec));
        for (float v : vec)
            if (!std::isfinite(v))
                throw ParseError("non-finite value in record " + std::to_string(rec));

        if (vocab.count(token)) {
            ++duplicates;
            continue;
        }
        vocab.emplace(std::move(token), vocab.size());
        data.insert(data.end(), vec.begin(), vec.end());
    }

    return EmbeddingTable(dim, std::move(vocab), std::move(data), source_meta, duplicates);
}

void save_text_embeddings(const EmbeddingTable& table, std::ostream& out, bool write_header) {
    if (write_header) out << table.size() << ' ' << table.dimension() << '\n';
    std::vector<const std::string*> ordered(table.size());
    for (const auto& [token, idx] : table.vocab()) ordered[idx] = &token;
    char buf[64];
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        out << *ordered[i];
        for (float v : table.row(i)) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
            out << ' ';
            out.write(buf, ptr - buf);
        }
        out << '\n';
    }
}

}  // namespace wisse
