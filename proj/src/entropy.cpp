#include "wisse/entropy.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>

namespace wisse {

std::string WeightingConfig::name() const {
    if (scheme == Scheme::unweighted) return "unweighted";
    std::string out = scope == Scope::global ? "glob" : "loc";
    out += scheme == Scheme::tfidf ? "-tfidf" : "-idf";
    if (scheme == Scheme::tfidf) {
        if (tf_mode == TfMode::binary) out += "-bin";
        if (tf_mode == TfMode::log) out += "-log";
    }
    if (strip_stopwords) out += "-st";
    return out;
}

WeightingConfig WeightingConfig::parse_weights(const std::string& spec) {
    WeightingConfig cfg;
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t next = spec.find('-', pos);
        if (next == std::string::npos) next = spec.size();
        parts.push_back(spec.substr(pos, next - pos));
        pos = next + 1;
    }

    std::size_t i = 0;
    auto fail = [&] { throw std::invalid_argument("bad weights string: \"" + spec + "\""); };
    if (parts.empty() || parts[0].empty()) fail();

    if (parts[0] == "unweighted") {
        cfg.scheme = Scheme::unweighted;
        i = 1;
    } else {
        if (parts[0] == "glob")
            cfg.scope = Scope::global;
        else if (parts[0] == "loc")
            cfg.scope = Scope::local;
        else
            fail();
        if (parts.size() < 2) fail();
        if (parts[1] == "tfidf")
            cfg.scheme = Scheme::tfidf;
        else if (parts[1] == "idf")
            cfg.scheme = Scheme::idf_only;
        else
            fail();
        i = 2;
        if (i < parts.size() && (parts[i] == "bin" || parts[i] == "log")) {
            if (cfg.scheme != Scheme::tfidf) fail();
            cfg.tf_mode = parts[i] == "bin" ? TfMode::binary : TfMode::log;
            ++i;
        }
    }
    if (i < parts.size() && parts[i] == "st") {
        cfg.strip_stopwords = true;
        ++i;
    }
    if (i != parts.size()) fail();
    return cfg;
}

CorpusStats::CorpusStats(std::uint64_t n_sentences, std::uint64_t total_tokens,
                         std::unordered_map<std::string, std::uint64_t> doc_freq,
                         IdfVariant variant)
    : n_sentences_(n_sentences),
      total_tokens_(total_tokens),
      doc_freq_(std::move(doc_freq)),
      variant_(variant) {
    if (n_sentences_ == 0) throw StatsError("empty corpus");
    for (const auto& [token, df] : doc_freq_)
        if (df == 0 || df > n_sentences_)
            throw StatsError("doc_freq out of range for token \"" + token + "\"");
}

std::optional<std::uint64_t> CorpusStats::doc_freq_of(const std::string& token) const {
    auto it = doc_freq_.find(token);
    if (it == doc_freq_.end()) return std::nullopt;
    return it->second;
}

double CorpusStats::idf_from_df(std::uint64_t df) const {
    double ns = static_cast<double>(n_sentences_);
    double nw = static_cast<double>(df);
    if (variant_ == IdfVariant::paper) return std::log(ns / nw);
    return std::log((1.0 + ns) / (1.0 + nw)) + 1.0;
}

std::optional<double> CorpusStats::idf(const std::string& token, OovIdfPolicy policy) const {
    auto df = doc_freq_of(token);
    if (!df) {
        if (policy == OovIdfPolicy::skip) return std::nullopt;
        return idf_from_df(1);  // unseen words are maximally informative
    }
    return idf_from_df(*df);
}

void StatsFitter::add(const SentenceTokens& doc) {
    ++n_sentences_;
    std::unordered_set<std::string_view> seen;
    for (const auto& token : doc.tokens) {
        if (opts_.strip_at_fit && opts_.strip_at_fit->contains(token)) continue;
        ++total_tokens_;
        if (seen.insert(token).second) ++doc_freq_[token];
    }
}

CorpusStats StatsFitter::finish() const {
    if (n_sentences_ == 0) throw StatsError("empty corpus");
    return CorpusStats(n_sentences_, total_tokens_, doc_freq_, opts_.variant);
}

CorpusStats fit_stats(std::istream& corpus, FitOptions opts, const TokenizerOptions& tok) {
    StatsFitter fitter(opts);
    CorpusReader reader;
    reader.for_each(corpus, [&](const SentenceTokens& doc) { fitter.add(doc); }, tok);
    return fitter.finish();
}

double sentence_entropy(const CorpusStats& stats) {
    return std::log(static_cast<double>(stats.n_sentences()));
}

std::optional<double> word_conditional_entropy(const CorpusStats& stats, const std::string& token,
                                               OovIdfPolicy policy) {
    auto df = stats.doc_freq_of(token);
    if (!df) {
        if (policy == OovIdfPolicy::skip) return std::nullopt;
        return 0.0;  // df = 1 fallback
    }
    return std::log(static_cast<double>(*df));
}

double corpus_mutual_information(
    const CorpusStats& stats, const std::unordered_map<std::string, std::uint64_t>& term_freq) {
    double f_total = static_cast<double>(stats.total_tokens());
    double log_ns = std::log(static_cast<double>(stats.n_sentences()));
    double sum = 0.0;
    for (const auto& [token, freq] : term_freq) {
        auto df = stats.doc_freq_of(token);
        if (!df) continue;
        sum += (static_cast<double>(freq) / f_total) *
               (log_ns - std::log(static_cast<double>(*df)));
    }
    return sum;
}

double tf_value(const std::string& token, const SentenceTokens& sentence, TfMode mode,
                std::uint64_t total_tokens) {
    std::uint64_t f = 0;
    for (const auto& t : sentence.tokens)
        if (t == token) ++f;
    double F = static_cast<double>(total_tokens);
    switch (mode) {
        case TfMode::frequency:
            return static_cast<double>(f) / F;
        case TfMode::binary:
            return f > 0 ? 1.0 / F : 0.0;
        case TfMode::log:
            return std::log(static_cast<double>(f) + 1.0) / F;
    }
    return 0.0;
}

std::optional<double> word_weight(const std::string& token, const SentenceTokens& sentence,
                                  const CorpusStats& stats, const WeightingConfig& cfg) {
    if (cfg.scheme == Scheme::unweighted) return cfg.weight_scale;
    auto idf = stats.idf(token, cfg.oov_idf_policy);
    if (!idf) return std::nullopt;
    if (cfg.scheme == Scheme::idf_only) return cfg.weight_scale * *idf;
    return cfg.weight_scale * tf_value(token, sentence, cfg.tf_mode, stats.total_tokens()) * *idf;
}

namespace {

constexpr char kMagic[] = "WISSESTATS";
constexpr std::size_t kMagicLen = 10;
constexpr std::uint8_t kVersion = 1;

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> buf;
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf.data(), 8);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    std::array<char, 4> buf;
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf.data(), 4);
}

std::uint64_t get_u64(std::istream& in) {
    std::array<char, 8> buf;
    in.read(buf.data(), 8);
    if (in.gcount() != 8) throw StatsError("corrupt stats payload: truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

std::uint32_t get_u32(std::istream& in) {
    std::array<char, 4> buf;
    in.read(buf.data(), 4);
    if (in.gcount() != 4) throw StatsError("corrupt stats payload: truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

}  // namespace

void save_stats(const CorpusStats& stats, std::ostream& out) {
    out.write(kMagic, kMagicLen);
    out.put(static_cast<char>(kVersion));
    put_u64(out, stats.n_sentences());
    put_u64(out, stats.total_tokens());
    put_u64(out, stats.doc_freq().size());
    // sorted for byte-identical output across runs
    std::map<std::string, std::uint64_t> ordered(stats.doc_freq().begin(),
                                                 stats.doc_freq().end());
    for (const auto& [token, df] : ordered) {
        put_u32(out, static_cast<std::uint32_t>(token.size()));
        out.write(token.data(), static_cast<std::streamsize>(token.size()));
        put_u64(out, df);
    }
}

CorpusStats load_stats(std::istream& in, IdfVariant variant) {
    std::array<char, kMagicLen> magic;
    in.read(magic.data(), kMagicLen);
    if (in.gcount() != static_cast<std::streamsize>(kMagicLen) ||
        std::memcmp(magic.data(), kMagic, kMagicLen) != 0)
        throw StatsError("not a stats file (bad magic)");
    int version = in.get();
    if (version == std::istream::traits_type::eof())
        throw StatsError("corrupt stats payload: truncated");
    if (version != kVersion)
        throw StatsError("unsupported stats version " + std::to_string(version));

    std::uint64_t n_sentences = get_u64(in);
    std::uint64_t total_tokens = get_u64(in);
    std::uint64_t count = get_u64(in);
    std::unordered_map<std::string, std::uint64_t> doc_freq;
    doc_freq.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint32_t len = get_u32(in);
        std::string token(len, '\0');
        in.read(token.data(), len);
        if (static_cast<std::uint32_t>(in.gcount()) != len)
            throw StatsError("corrupt stats payload: truncated");
        doc_freq.emplace(std::move(token), get_u64(in));
    }
    return CorpusStats(n_sentences, total_tokens, std::move(doc_freq), variant);
}

}  // namespace wisse
