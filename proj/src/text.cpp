#include "wisse/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>

#include "wisse/embedding_table.hpp"  // ParseError

namespace wisse {

namespace {

// Length of the UTF-8 sequence starting at `lead`, 0 if invalid.
int utf8_seq_len(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead & 0xE0) == 0xC0) return 2;
    if ((lead & 0xF0) == 0xE0) return 3;
    if ((lead & 0xF8) == 0xF0) return 4;
    return 0;
}

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

}  // namespace

SentenceTokens tokenize(const std::string& text, const TokenizerOptions& opts) {
    SentenceTokens out;
    out.raw = text;
    std::string current;
    auto flush = [&] {
        if (current.size() >= opts.min_token_len) out.tokens.push_back(current);
        current.clear();
    };

    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        int len = utf8_seq_len(c);
        if (len == 0)
            throw ParseError("invalid UTF-8 at byte offset " + std::to_string(i));
        if (len == 1) {
            if (std::isalnum(c)) {
                current.push_back(static_cast<char>(std::tolower(c)));
            } else {
                flush();
            }
            ++i;
            continue;
        }
        if (i + len > text.size())
            throw ParseError("invalid UTF-8 at byte offset " + std::to_string(i));
        for (int k = 1; k < len; ++k)
            if (!is_continuation(static_cast<unsigned char>(text[i + k])))
                throw ParseError("invalid UTF-8 at byte offset " + std::to_string(i + k));
        // Non-ASCII codepoints count as word characters, kept verbatim.
        current.append(text, i, static_cast<std::size_t>(len));
        i += len;
    }
    flush();
    return out;
}

SentenceTokens strip_stopwords(const SentenceTokens& s, const StopwordList& list) {
    SentenceTokens out;
    out.raw = s.raw;
    out.tokens.reserve(s.tokens.size());
    for (const auto& t : s.tokens)
        if (!list.contains(t)) out.tokens.push_back(t);
    return out;
}

StopwordList load_stopwords(std::istream& in, const std::string& source) {
    StopwordList list;
    list.source = source;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::transform(line.begin(), line.end(), line.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        list.words.insert(line);
    }
    return list;
}

void CorpusReader::for_each(std::istream& in,
                            const std::function<void(const SentenceTokens&)>& fn,
                            const TokenizerOptions& opts) {
    std::string line;
    std::size_t byte_offset = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        SentenceTokens doc;
        try {
            doc = tokenize(line, opts);
        } catch (const ParseError&) {
            throw ParseError("invalid UTF-8 near byte offset " + std::to_string(byte_offset));
        }
        ++documents;
        tokens += doc.tokens.size();
        fn(doc);
        byte_offset += line.size() + 1;
    }
}

namespace {

double parse_gold_score(const std::string& field, std::size_t line_no) {
    double v;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("line " + std::to_string(line_no) + ": bad gold score \"" + field + "\"");
    if (v < 0.0 || v > 5.0)
        throw ParseError("line " + std::to_string(line_no) + ": gold score " + field +
                         " outside [0, 5]");
    return v;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = line.find('\t', pos);
        if (next == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

STSDataset load_semeval(std::istream& input, std::istream* gold, const TokenizerOptions& opts) {
    if (!gold) throw ParseError("semeval format requires a gold file");
    STSDataset ds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 2)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected \"sentenceA<TAB>sentenceB\"");
        ds.pairs.emplace_back(tokenize(fields[0], opts), tokenize(fields[1], opts));
    }
    line_no = 0;
    while (std::getline(*gold, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ds.gold.push_back(parse_gold_score(line, line_no));
    }
    if (ds.pairs.size() != ds.gold.size())
        throw ParseError("pair count " + std::to_string(ds.pairs.size()) +
                         " does not match gold count " + std::to_string(ds.gold.size()));
    return ds;
}

STSDataset load_sick(std::istream& input, const TokenizerOptions& opts) {
    std::string line;
    if (!std::getline(input, line)) throw ParseError("empty sick file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_tabs(line);
    auto col = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ParseError("sick file missing column " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    std::size_t col_a = col("sentence_A");
    std::size_t col_b = col("sentence_B");
    std::size_t col_score = col("relatedness_score");

    STSDataset ds;
    std::size_t line_no = 1;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        std::size_t needed = std::max({col_a, col_b, col_score}) + 1;
        if (fields.size() < needed)
            throw ParseError("line " + std::to_string(line_no) + ": expected at least " +
                             std::to_string(needed) + " columns");
        ds.pairs.emplace_back(tokenize(fields[col_a], opts), tokenize(fields[col_b], opts));
        ds.gold.push_back(parse_gold_score(fields[col_score], line_no));
    }
    return ds;
}

}  // namespace

STSDataset load_sts_dataset(std::istream& input, std::istream* gold, DatasetFormat format,
                            const TokenizerOptions& opts) {
    switch (format) {
        case DatasetFormat::semeval:
            return load_semeval(input, gold, opts);
        case DatasetFormat::sick:
            return load_sick(input, opts);
    }
    throw ParseError("unknown dataset format");
}

}  // namespace wisse
