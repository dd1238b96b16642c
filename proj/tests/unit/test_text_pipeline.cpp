#include <random>
#include <sstream>

#include "doctest.h"
#include "wisse/embedding_table.hpp"
#include "wisse/text.hpp"

using namespace wisse;

namespace {

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

}  // namespace

TEST_CASE("tokenize basic sentence") {
    auto s = tokenize("The dog barks.");
    CHECK(s.tokens == std::vector<std::string>{"the", "dog", "barks"});
    CHECK(s.raw == "The dog barks.");
}

TEST_CASE("tokenize empty text") {
    CHECK(tokenize("").tokens.empty());
    CHECK(tokenize("  ...  ").tokens.empty());
}

TEST_CASE("tokenize keeps length-1 tokens by default") {
    auto s = tokenize("A girl is close to a boy");
    CHECK(s.tokens == std::vector<std::string>{"a", "girl", "is", "close", "to", "a", "boy"});
}

TEST_CASE("min_token_len 2 matches scikit behavior") {
    TokenizerOptions opts;
    opts.min_token_len = 2;
    auto s = tokenize("A girl is close to a boy", opts);
    CHECK(s.tokens == std::vector<std::string>{"girl", "is", "close", "to", "boy"});
}

TEST_CASE("tokenize splits on punctuation runs and digits stay") {
    auto s = tokenize("it's a 2-year-old, really?!");
    CHECK(s.tokens ==
          std::vector<std::string>{"it", "s", "a", "2", "year", "old", "really"});
}

TEST_CASE("tokenize accepts multi-byte UTF-8 as word characters") {
    auto s = tokenize("caf\xC3\xA9 au lait");
    CHECK(s.tokens == std::vector<std::string>{"caf\xC3\xA9", "au", "lait"});
}

TEST_CASE("invalid UTF-8 reports a byte offset") {
    std::string bad = "ok \xFF nope";
    CHECK_THROWS_WITH_AS(tokenize(bad), doctest::Contains("byte offset 3"), ParseError);
}

TEST_CASE("tokenize is idempotent on its own joined output") {
    std::mt19937 rng(3);
    const char* alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
    for (int round = 0; round < 200; ++round) {
        std::vector<std::string> tokens;
        int n = static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) {
            std::string t;
            int len = 1 + static_cast<int>(rng() % 6);
            for (int k = 0; k < len; ++k) t.push_back(alphabet[rng() % 36]);
            tokens.push_back(t);
        }
        CHECK(tokenize(join(tokens)).tokens == tokens);
    }
}

TEST_CASE("strip_stopwords removes in order") {
    StopwordList list;
    list.words = {"the", "a", "is"};
    SentenceTokens s;
    s.tokens = {"the", "dog", "barks"};
    CHECK(strip_stopwords(s, list).tokens == std::vector<std::string>{"dog", "barks"});
    CHECK(strip_stopwords(SentenceTokens{}, list).tokens.empty());
}

TEST_CASE("strip_stopwords is idempotent") {
    const auto& list = default_stopwords();
    auto s = tokenize("there is not a single thing the dog would not do");
    auto once = strip_stopwords(s, list);
    auto twice = strip_stopwords(once, list);
    CHECK(once.tokens == twice.tokens);
}

TEST_CASE("default stopword list") {
    const auto& list = default_stopwords();
    CHECK(list.words.size() == 318);
    CHECK(list.source == "built-in");
    CHECK(list.contains("the"));
    CHECK(list.contains("not"));

    // content words survive stripping
    auto s = tokenize("A man is not jumping while wearing a red shirt");
    auto stripped = strip_stopwords(s, list);
    for (const char* kept : {"jumping", "wearing", "shirt", "red", "man"}) {
        bool found = false;
        for (const auto& t : stripped.tokens)
            if (t == kept) found = true;
        CHECK_MESSAGE(found, kept);
    }
    // "not" is on the shipped list, so it is stripped
    for (const auto& t : stripped.tokens) CHECK(t != "not");
}

TEST_CASE("load_stopwords lowercases entries") {
    std::istringstream in("The\nAND\n\nnot\n");
    auto list = load_stopwords(in, "custom.txt");
    CHECK(list.words.size() == 3);
    CHECK(list.contains("the"));
    CHECK(list.contains("and"));
}

TEST_CASE("corpus reader counts documents and tokens") {
    std::istringstream in("the dog barks\nthe cat sleeps\n");
    CorpusReader reader;
    std::vector<std::size_t> sizes;
    reader.for_each(in, [&](const SentenceTokens& doc) { sizes.push_back(doc.tokens.size()); });
    CHECK(reader.documents == 2);
    CHECK(reader.tokens == 6);
    CHECK(sizes == std::vector<std::size_t>{3, 3});
}

TEST_CASE("semeval dataset with boundary gold scores") {
    std::istringstream in("a dog\ta cat\nbirds fly\tfish swim\n");
    std::istringstream gold("0.0\n5.0\n");
    auto ds = load_sts_dataset(in, &gold, DatasetFormat::semeval);
    CHECK(ds.size() == 2);
    CHECK(ds.gold == std::vector<double>{0.0, 5.0});
    CHECK(ds.pairs[0].first.tokens == std::vector<std::string>{"a", "dog"});
    CHECK(ds.pairs[1].second.tokens == std::vector<std::string>{"fish", "swim"});
}

TEST_CASE("semeval length mismatch is an error") {
    std::istringstream in("a\tb\nc\td\ne\tf\n");
    std::istringstream gold("1.0\n2.0\n");
    CHECK_THROWS_AS(load_sts_dataset(in, &gold, DatasetFormat::semeval), ParseError);
}

TEST_CASE("gold score outside range names the line") {
    std::istringstream in("a\tb\n");
    std::istringstream gold("5.5\n");
    CHECK_THROWS_WITH_AS(load_sts_dataset(in, &gold, DatasetFormat::semeval),
                         doctest::Contains("line 1"), ParseError);
}

TEST_CASE("sick format reads relatedness_score") {
    std::istringstream in(
        "pair_ID\tsentence_A\tsentence_B\trelatedness_score\tentailment_judgment\n"
        "1\tA dog barks\tA cat sleeps\t2.4\tNEUTRAL\n"
        "2\tBirds fly\tBirds are flying\t4.7\tENTAILMENT\n"
        "3\tA man runs\tA man is running\t4.9\tENTAILMENT\n");
    auto ds = load_sts_dataset(in, nullptr, DatasetFormat::sick);
    CHECK(ds.size() == 3);
    CHECK(ds.gold[1] == doctest::Approx(4.7));
    CHECK(ds.pairs[2].first.tokens == std::vector<std::string>{"a", "man", "runs"});
}

TEST_CASE("sick missing column is an error") {
    std::istringstream in("pair_ID\tsentence_A\tsentence_B\tscore\n1\ta\tb\t2.0\n");
    CHECK_THROWS_WITH_AS(load_sts_dataset(in, nullptr, DatasetFormat::sick),
                         doctest::Contains("relatedness_score"), ParseError);
}

TEST_CASE("dataset loading preserves pair order") {
    std::ostringstream input, gold;
    for (int i = 0; i < 25; ++i) {
        input << "tok" << i << "\tother" << i << "\n";
        gold << (i % 6) << ".0\n";
    }
    std::istringstream in(input.str()), g(gold.str());
    auto ds = load_sts_dataset(in, &g, DatasetFormat::semeval);
    REQUIRE(ds.size() == 25);
    for (int i = 0; i < 25; ++i)
        CHECK(ds.pairs[i].first.tokens[0] == "tok" + std::to_string(i));
}
