#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "wisse/composer.hpp"

using namespace wisse;

namespace {

EmbeddingTable toy_table() {
    std::istringstream in("the 1.0 0.0\ndog 0.0 1.0\nbarks 1.0 1.0\n");
    return load_text_embeddings(in, false);
}

CorpusStats toy_stats() {
    StatsFitter fitter;
    fitter.add({{"the", "dog", "barks"}, ""});
    fitter.add({{"the", "cat", "sleeps"}, ""});
    fitter.add({{"the", "dog", "sleeps"}, ""});
    fitter.add({{"a", "bird", "sings"}, ""});
    return fitter.finish();
}

}  // namespace

TEST_CASE("toy sentence composes to the hand-computed sum") {
    auto table = toy_table();
    auto stats = toy_stats();
    WeightingConfig cfg;  // loc-tfidf / frequency / sum
    auto v = embed_sentence({{"the", "dog", "barks"}, ""}, table, stats, cfg);

    double w_the = std::log(4.0 / 3.0) / 12;
    double w_dog = std::log(2.0) / 12;
    double w_barks = std::log(4.0) / 12;
    REQUIRE(v.values.size() == 2);
    CHECK(v.values[0] == doctest::Approx(w_the + w_barks).epsilon(1e-12));
    CHECK(v.values[1] == doctest::Approx(w_dog + w_barks).epsilon(1e-12));
    // spec'd decimals
    CHECK(v.values[0] == doctest::Approx(0.139498).epsilon(1e-4));
    CHECK(v.values[1] == doctest::Approx(0.173287).epsilon(1e-4));
    CHECK(v.contributing == 3);
    CHECK(v.skipped_oov == 0);
}

TEST_CASE("single token with unweighted avg is the identity") {
    auto table = toy_table();
    auto stats = toy_stats();
    WeightingConfig cfg;
    cfg.scheme = Scheme::unweighted;
    cfg.combination = Combination::avg;
    auto v = embed_sentence({{"dog"}, ""}, table, stats, cfg);
    CHECK(v.values == std::vector<double>{0.0, 1.0});
    CHECK(v.contributing == 1);
}

TEST_CASE("unweighted avg equals the arithmetic mean of found embeddings") {
    auto table = toy_table();
    auto stats = toy_stats();
    WeightingConfig cfg;
    cfg.scheme = Scheme::unweighted;
    cfg.combination = Combination::avg;
    auto v = embed_sentence({{"the", "dog", "barks", "zebra"}, ""}, table, stats, cfg);
    // mean of (1,0), (0,1), (1,1); the OOV token is excluded from the divisor
    CHECK(v.values[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(v.values[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(v.contributing == 3);
    CHECK(v.skipped_oov == 1);
}

TEST_CASE("all-oov or empty sentence gives the zero vector") {
    auto table = toy_table();
    auto stats = toy_stats();
    WeightingConfig cfg;
    for (auto tokens :
         {std::vector<std::string>{}, std::vector<std::string>{"zebra", "lion"}}) {
        auto v = embed_sentence({tokens, ""}, table, stats, cfg);
        CHECK(v.contributing == 0);
        CHECK(v.values == std::vector<double>{0.0, 0.0});
    }
}

TEST_CASE("stopword stripping applies before composition") {
    auto table = toy_table();
    auto stats = toy_stats();
    WeightingConfig cfg;
    cfg.strip_stopwords = true;  // default list contains "the"
    auto v = embed_sentence({{"the", "dog", "barks"}, ""}, table, stats, cfg);
    CHECK(v.contributing == 2);
    double w_dog = std::log(2.0) / 12;
    double w_barks = std::log(4.0) / 12;
    CHECK(v.values[0] == doctest::Approx(w_barks).epsilon(1e-12));
    CHECK(v.values[1] == doctest::Approx(w_dog + w_barks).epsilon(1e-12));
}

TEST_CASE("duplicate tokens contribute once when deduped") {
    auto table = toy_table();
    auto stats = toy_stats();
    WeightingConfig cfg;
    cfg.scheme = Scheme::unweighted;
    auto deduped = embed_sentence({{"dog", "dog", "dog"}, ""}, table, stats, cfg);
    CHECK(deduped.contributing == 1);
    CHECK(deduped.values[1] == 1.0);

    cfg.dedupe_tokens = false;
    auto per_occurrence = embed_sentence({{"dog", "dog", "dog"}, ""}, table, stats, cfg);
    CHECK(per_occurrence.contributing == 3);
    CHECK(per_occurrence.values[1] == 3.0);
}

TEST_CASE("scaling every weight scales the sum vector exactly") {
    auto table = toy_table();
    auto stats = toy_stats();
    SentenceTokens s{{"the", "dog", "barks"}, ""};
    WeightingConfig cfg;
    auto base = embed_sentence(s, table, stats, cfg);
    for (double c : {0.1, 2.0, 10.0}) {
        WeightingConfig scaled = cfg;
        scaled.weight_scale = c;
        auto v = embed_sentence(s, table, stats, scaled);
        for (std::size_t k = 0; k < v.values.size(); ++k)
            CHECK(v.values[k] == doctest::Approx(c * base.values[k]).epsilon(1e-12));
    }
}

TEST_CASE("composition is permutation invariant up to reassociation") {
    auto table = toy_table();
    auto stats = toy_stats();
    std::vector<std::string> tokens = {"the", "dog", "barks"};
    WeightingConfig cfg;
    auto reference = embed_sentence({tokens, ""}, table, stats, cfg);
    std::sort(tokens.begin(), tokens.end());
    do {
        auto v = embed_sentence({tokens, ""}, table, stats, cfg);
        for (std::size_t k = 0; k < v.values.size(); ++k)
            CHECK(v.values[k] == doctest::Approx(reference.values[k]).epsilon(1e-9));
    } while (std::next_permutation(tokens.begin(), tokens.end()));
}

TEST_CASE("l2 weight normalization preserves direction") {
    auto table = toy_table();
    auto stats = toy_stats();
    SentenceTokens s{{"the", "dog", "barks"}, ""};
    WeightingConfig cfg;
    auto raw = embed_sentence(s, table, stats, cfg);
    cfg.l2_normalize_weights = true;
    auto normalized = embed_sentence(s, table, stats, cfg);
    double ratio = normalized.values[0] / raw.values[0];
    CHECK(normalized.values[1] == doctest::Approx(ratio * raw.values[1]).epsilon(1e-12));
    CHECK(ratio > 1.0);  // toy weights are all below 1
}

TEST_CASE("batch equals the sequential loop bit for bit") {
    auto table = toy_table();
    auto stats = toy_stats();
    WeightingConfig cfg;

    std::mt19937 rng(5);
    std::vector<std::string> vocab = {"the", "dog", "barks", "cat", "sleeps", "zebra"};
    std::vector<SentenceTokens> sentences;
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::string> tokens;
        int n = static_cast<int>(rng() % 7);
        for (int k = 0; k < n; ++k) tokens.push_back(vocab[rng() % vocab.size()]);
        sentences.push_back({std::move(tokens), ""});
    }

    std::vector<SentenceVector> sequential;
    for (const auto& s : sentences)
        sequential.push_back(embed_sentence(s, table, stats, cfg));

    for (unsigned jobs : {1u, 4u}) {
        auto batch = embed_batch(sentences, table, stats, cfg, nullptr, jobs);
        REQUIRE(batch.size() == sequential.size());
        for (std::size_t i = 0; i < batch.size(); ++i) {
            CHECK(batch[i].values == sequential[i].values);
            CHECK(batch[i].contributing == sequential[i].contributing);
            CHECK(batch[i].skipped_oov == sequential[i].skipped_oov);
        }
    }
}

TEST_CASE("empty batch") {
    auto table = toy_table();
    auto stats = toy_stats();
    WeightingConfig cfg;
    CHECK(embed_batch({}, table, stats, cfg).empty());
}

TEST_CASE("oov skip policy omits the contribution entirely") {
    auto table = toy_table();
    // stats fitted without "barks" so it is OOV for the weight model
    StatsFitter fitter;
    fitter.add({{"the", "dog"}, ""});
    fitter.add({{"the", "cat"}, ""});
    auto stats = fitter.finish();
    WeightingConfig cfg;
    cfg.scheme = Scheme::idf_only;
    cfg.oov_idf_policy = OovIdfPolicy::skip;
    auto v = embed_sentence({{"dog", "barks"}, ""}, table, stats, cfg);
    CHECK(v.contributing == 1);  // only "dog"
    CHECK(v.values[0] == 0.0);

    cfg.oov_idf_policy = OovIdfPolicy::df_one_fallback;
    auto v2 = embed_sentence({{"dog", "barks"}, ""}, table, stats, cfg);
    CHECK(v2.contributing == 2);
    CHECK(v2.values[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}
