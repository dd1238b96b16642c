#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "wisse/composer.hpp"
#include "wisse/embedding_table.hpp"
#include "wisse/entropy.hpp"
#include "wisse/evaluation.hpp"
#include "wisse/metrics.hpp"
#include "wisse/text.hpp"

namespace py = pybind11;
using namespace wisse;

namespace {

std::ifstream open_file(const std::string& path, bool binary) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

SentenceTokens as_sentence(const std::vector<std::string>& tokens) {
    SentenceTokens s;
    s.tokens = tokens;
    return s;
}

}  // namespace

PYBIND11_MODULE(_wisse, m) {
    m.doc() = "Entropy-weighted sentence embeddings (WISSE) core";

    py::enum_<IdfVariant>(m, "IdfVariant")
        .value("paper", IdfVariant::paper)
        .value("smoothed", IdfVariant::smoothed);
    py::enum_<Scheme>(m, "Scheme")
        .value("tfidf", Scheme::tfidf)
        .value("idf_only", Scheme::idf_only)
        .value("unweighted", Scheme::unweighted);
    py::enum_<TfMode>(m, "TfMode")
        .value("binary", TfMode::binary)
        .value("frequency", TfMode::frequency)
        .value("log", TfMode::log);
    py::enum_<Scope>(m, "Scope").value("global_", Scope::global).value("local", Scope::local);
    py::enum_<Combination>(m, "Combination")
        .value("sum", Combination::sum)
        .value("avg", Combination::avg);
    py::enum_<OovIdfPolicy>(m, "OovIdfPolicy")
        .value("df_one_fallback", OovIdfPolicy::df_one_fallback)
        .value("skip", OovIdfPolicy::skip);
    py::enum_<MetricKind>(m, "MetricKind")
        .value("cosine", MetricKind::cosine)
        .value("euclidean", MetricKind::euclidean)
        .value("manhattan", MetricKind::manhattan);

    py::class_<WeightingConfig>(m, "WeightingConfig")
        .def(py::init<>())
        .def_readwrite("scheme", &WeightingConfig::scheme)
        .def_readwrite("tf_mode", &WeightingConfig::tf_mode)
        .def_readwrite("scope", &WeightingConfig::scope)
        .def_readwrite("strip_stopwords", &WeightingConfig::strip_stopwords)
        .def_readwrite("combination", &WeightingConfig::combination)
        .def_readwrite("idf_variant", &WeightingConfig::idf_variant)
        .def_readwrite("oov_idf_policy", &WeightingConfig::oov_idf_policy)
        .def_readwrite("dedupe_tokens", &WeightingConfig::dedupe_tokens)
        .def_readwrite("l2_normalize_weights", &WeightingConfig::l2_normalize_weights)
        .def("name", &WeightingConfig::name)
        .def_static("parse_weights", &WeightingConfig::parse_weights);

    py::class_<EmbeddingTable>(m, "EmbeddingTable")
        .def_property_readonly("dimension", &EmbeddingTable::dimension)
        .def("__len__", &EmbeddingTable::size)
        .def("__contains__", &EmbeddingTable::contains)
        .def("lookup",
             [](const EmbeddingTable& t, const std::string& token) -> py::object {
                 auto row = t.lookup(token);
                 if (!row) return py::none();
                 return py::cast(std::vector<float>(row->begin(), row->end()));
             })
        .def_property_readonly("source_meta", &EmbeddingTable::source_meta);

    m.def("load_text_embeddings", [](const std::string& path, bool has_header) {
        auto in = open_file(path, false);
        return load_text_embeddings(in, has_header, path);
    });
    m.def("load_embeddings", [](const std::string& path) {
        auto in = open_file(path, false);
        return load_embeddings_auto(in, path);
    });
    m.def("load_word2vec_binary", [](const std::string& path) {
        auto in = open_file(path, true);
        return load_word2vec_binary(in, path);
    });

    m.def("tokenize", [](const std::string& text, std::size_t min_token_len) {
        return tokenize(text, TokenizerOptions{min_token_len}).tokens;
    }, py::arg("text"), py::arg("min_token_len") = 1);
    m.def("strip_stopwords", [](const std::vector<std::string>& tokens) {
        return strip_stopwords(as_sentence(tokens), default_stopwords()).tokens;
    });

    py::class_<CorpusStats>(m, "CorpusStats")
        .def_property_readonly("n_sentences", &CorpusStats::n_sentences)
        .def_property_readonly("total_tokens", &CorpusStats::total_tokens)
        .def("doc_freq",
             [](const CorpusStats& s, const std::string& token) -> py::object {
                 auto df = s.doc_freq_of(token);
                 if (!df) return py::none();
                 return py::cast(*df);
             })
        .def("idf", [](const CorpusStats& s, const std::string& token) -> py::object {
            auto v = s.idf(token);
            if (!v) return py::none();
            return py::cast(*v);
        });

    m.def("fit_stats",
          [](const std::vector<std::vector<std::string>>& docs, IdfVariant variant) {
              StatsFitter fitter(FitOptions{variant});
              for (const auto& doc : docs) fitter.add(as_sentence(doc));
              return fitter.finish();
          },
          py::arg("documents"), py::arg("variant") = IdfVariant::paper);
    m.def("fit_stats_file", [](const std::string& path, IdfVariant variant) {
        auto in = open_file(path, false);
        return fit_stats(in, FitOptions{variant});
    }, py::arg("path"), py::arg("variant") = IdfVariant::paper);
    m.def("save_stats", [](const CorpusStats& stats, const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path);
        save_stats(stats, out);
    });
    m.def("load_stats", [](const std::string& path, IdfVariant variant) {
        auto in = open_file(path, true);
        return load_stats(in, variant);
    }, py::arg("path"), py::arg("variant") = IdfVariant::paper);

    m.def("sentence_entropy", &sentence_entropy);
    m.def("word_conditional_entropy",
          [](const CorpusStats& stats, const std::string& token) -> py::object {
              auto v = word_conditional_entropy(stats, token);
              if (!v) return py::none();
              return py::cast(*v);
          });
    m.def("tf_value", [](const std::string& token, const std::vector<std::string>& sentence,
                         TfMode mode, std::uint64_t total_tokens) {
        return tf_value(token, as_sentence(sentence), mode, total_tokens);
    });
    m.def("word_weight",
          [](const std::string& token, const std::vector<std::string>& sentence,
             const CorpusStats& stats, const WeightingConfig& cfg) -> py::object {
              auto w = word_weight(token, as_sentence(sentence), stats, cfg);
              if (!w) return py::none();
              return py::cast(*w);
          });

    py::class_<SentenceVector>(m, "SentenceVector")
        .def_readonly("values", &SentenceVector::values)
        .def_readonly("contributing", &SentenceVector::contributing)
        .def_readonly("skipped_oov", &SentenceVector::skipped_oov);

    m.def("embed_sentence",
          [](const std::vector<std::string>& tokens, const EmbeddingTable& table,
             const CorpusStats& stats, const WeightingConfig& cfg) {
              return embed_sentence(as_sentence(tokens), table, stats, cfg);
          });

    m.def("cosine", [](const std::vector<double>& u, const std::vector<double>& v) {
        return cosine(u, v);
    });
    m.def("euclidean", [](const std::vector<double>& u, const std::vector<double>& v) {
        return euclidean(u, v);
    });
    m.def("manhattan", [](const std::vector<double>& u, const std::vector<double>& v) {
        return manhattan(u, v);
    });
    m.def("score", [](const std::vector<double>& u, const std::vector<double>& v,
                      MetricKind kind) { return score(u, v, kind); });
    m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) {
        return pearson(x, y);
    });
}
