#include <asymnet/langfeat.hpp>
#include <asymnet/text.hpp>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace asymnet;
using fixture::msg;
using fixture::ptrs;

namespace {

const SentimentLexicon& small_lexicon()
{
    static const SentimentLexicon lex({{"good", 1}, {"great", 1}, {"bad", -1}});
    return lex;
}

// Two people, four messages; every value below is worked out by hand with an
// order-1 model, k = 1, min_count = 1 (V = 5, N = 9, P(w) = (c + 1) / 14).
std::vector<Message> two_person()
{
    return {msg("1", "a@x", {"b@x"}, 0, "Good day. Good plan!"), msg("2", "a@x", {"b@x"}, 2, "bad day"),
            msg("3", "b@x", {"a@x"}, 0, "plan day"), msg("4", "b@x", {"a@x"}, 4, "great")};
}

PairStats stats_of(std::size_t n, double first_day, double last_day)
{
    PairStats st;
    st.count = n;
    st.first = fixture::day(first_day);
    st.last = fixture::day(last_day);
    return st;
}

} // namespace

TEST_SUITE("text") {

TEST_CASE("tokenize")
{
    CHECK(text::tokenize("Hello, World! it's 2001...") ==
          std::vector<std::string>{"hello", "world", "it", "s", "2001"});
    CHECK(text::tokenize("").empty());
    CHECK(text::tokenize("caf\xc3\xa9 ok") == std::vector<std::string>{"caf", "ok"});
    CHECK(text::tokenize("a b c") == text::tokenize("a b c"));
}

TEST_CASE("sentences")
{
    CHECK(text::count_sentences("One. Two! Three?") == 3);
    CHECK(text::count_sentences("no terminator") == 1);
    CHECK(text::count_sentences("") == 0);
    CHECK(text::count_sentences(" ... \n\n ") == 0);
    CHECK(text::count_sentences("line one\nline two.") == 2);
}

} // TEST_SUITE

TEST_SUITE("langfeat") {

TEST_CASE("frequency_score")
{
    CHECK(frequency_score(stats_of(10, 0, 5)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(frequency_score(stats_of(7, 3, 3)) == 7.0);
    CHECK(frequency_score(stats_of(7, 3, 3.5)) == 7.0);
    CHECK(frequency_score(stats_of(15, 0, 30)) == doctest::Approx(0.5).epsilon(1e-12));
    // Doubling N over the same span doubles the score.
    CHECK(frequency_score(stats_of(20, 0, 5)) == doctest::Approx(2 * frequency_score(stats_of(10, 0, 5))));
    CHECK_THROWS_AS(frequency_score(stats_of(0, 0, 5)), std::invalid_argument);
}

TEST_CASE("length_score")
{
    std::vector<Message> four;
    for (int i = 0; i < 4; ++i) {
        std::string body;
        for (int w = 0; w < 25; ++w)
            body += "w ";
        four.push_back(msg(std::to_string(i), "a", {"b"}, 0, body));
    }
    CHECK(length_score(ptrs(four)) == 25.0);

    std::vector<Message> empty = {msg("1", "a", {"b"}, 0, "")};
    CHECK(length_score(ptrs(empty)) == 0.0);

    std::vector<Message> two = {msg("1", "a", {"b"}, 0, "a b c"), msg("2", "a", {"b"}, 0, "d")};
    CHECK(length_score(ptrs(two)) == 2.0);
    CHECK_THROWS_AS(length_score({}), std::invalid_argument);
}

TEST_CASE("sentiment_score")
{
    const auto& lex = small_lexicon();
    std::vector<Message> a = {msg("1", "a", {"b"}, 0, "Good stuff, bad timing. Great!")};
    CHECK(*sentiment_score(lex, ptrs(a)) == 0.5);

    std::vector<Message> b = {msg("1", "a", {"b"}, 0, "One. Two. Three.")};
    CHECK(*sentiment_score(lex, ptrs(b)) == 0.0);

    std::vector<Message> c = {msg("1", "a", {"b"}, 0, "bad bad")};
    CHECK(*sentiment_score(lex, ptrs(c)) == -2.0);

    std::vector<Message> d = {msg("1", "a", {"b"}, 0, "  ")};
    CHECK_FALSE(sentiment_score(lex, ptrs(d)));

    // Appending a sentence with one +1 word moves W/S to (W+1)/(S+1).
    std::vector<Message> e = {msg("1", "a", {"b"}, 0, "good day. bad bad day. good. fine")};
    std::vector<Message> e2 = {msg("1", "a", {"b"}, 0, "good day. bad bad day. good. fine. great")};
    CHECK(*sentiment_score(lex, ptrs(e)) == doctest::Approx(0.0 / 4));
    CHECK(*sentiment_score(lex, ptrs(e2)) == doctest::Approx(1.0 / 5));
}

TEST_CASE("lexicon parsing")
{
    std::istringstream ok("# comment\n\nGood\t1\r\nbad\t -2.5 \n");
    auto lex = SentimentLexicon::parse(ok);
    CHECK(lex.size() == 2);
    CHECK(lex.polarity("good") == 1.0);
    CHECK(lex.polarity("bad") == -2.5);
    CHECK(lex.polarity("meh") == 0.0);

    std::istringstream dup("good\t1\nGOOD\t2\n");
    CHECK_THROWS_AS(SentimentLexicon::parse(dup), ParseError);
    std::istringstream notab("good 1\n");
    CHECK_THROWS_AS(SentimentLexicon::parse(notab), ParseError);
    std::istringstream badnum("good\tvery\n");
    CHECK_THROWS_AS(SentimentLexicon::parse(badnum), ParseError);
    CHECK_THROWS_AS(SentimentLexicon::load("/nonexistent/lexicon.tsv"), InputError);
}

TEST_CASE("uniform limit and closed-form perplexity")
{
    std::vector<Message> corpus;
    const char* words[] = {"t0", "t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9"};
    std::string all;
    for (const char* w : words)
        all += std::string(w) + " ";
    corpus.push_back(msg("1", "a", {"b"}, 0, all));

    for (double k : {1e-9, 0.1, 1.0}) {
        auto lm = LanguageModel::train(corpus, {1, k, 1});
        REQUIRE(lm.vocabulary_size() == 10);
        for (LanguageModel::TokenId w = 0; w < 10; ++w)
            CHECK(lm.probability({}, w) == doctest::Approx(0.1).epsilon(1e-12));

        for (std::size_t len : {1u, 5u, 9u, 40u}) {
            std::string body;
            for (std::size_t i = 0; i < len; ++i)
                body += std::string(words[i % 10]) + " ";
            std::vector<Message> test = {msg("t", "a", {"b"}, 0, body)};
            auto pp = perplexity_score(lm, ptrs(test));
            REQUIRE(pp);
            const double expect = std::pow(10.0, static_cast<double>(len) / static_cast<double>(len + 1));
            CHECK(std::abs(*pp - expect) < 1e-9);
        }

        std::vector<Message> oov = {msg("t", "a", {"b"}, 0, "t3 zzz t7")};
        CHECK(std::abs(*perplexity_score(lm, ptrs(oov)) - std::pow(10.0, 2.0 / 3.0)) < 1e-9);

        std::vector<Message> none = {msg("t", "a", {"b"}, 0, "zzz yyy")};
        CHECK_FALSE(perplexity_score(lm, ptrs(none)));
        std::vector<Message> blank = {msg("t", "a", {"b"}, 0, "")};
        CHECK_FALSE(perplexity_score(lm, ptrs(blank)));
    }
}

TEST_CASE("min_count cutoff")
{
    std::vector<Message> corpus = {msg("1", "a", {"b"}, 0, "often often rare")};
    auto lm = LanguageModel::train(corpus, {2, 0.1, 2});
    CHECK(lm.vocabulary_size() == 1);
    CHECK(lm.lookup("often") == 0);
    CHECK(lm.lookup("rare") == LanguageModel::kUnknown);
    CHECK_THROWS_AS(LanguageModel::train(corpus, {2, 0.1, 5}), Error);
    std::vector<Message> blank = {msg("1", "a", {"b"}, 0, "...")};
    CHECK_THROWS_AS(LanguageModel::train(blank, {2, 0.1, 1}), Error);
    CHECK_THROWS_AS(LanguageModel::train(corpus, {0, 0.1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(LanguageModel::train(corpus, {2, 0.0, 1}), std::invalid_argument);
}

TEST_CASE("probabilities sum to one for every history")
{
    std::mt19937_64 rng(5);
    const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f", "g", "h", "q", "z"};
    std::vector<Message> corpus;
    for (int i = 0; i < 60; ++i) {
        std::string body;
        const int n = static_cast<int>(rng() % 12);
        for (int j = 0; j < n; ++j)
            body += pool[rng() % (j % 3 == 0 ? 4 : pool.size())] + " ";
        corpus.push_back(msg(std::to_string(i), "a", {"b"}, 0, body));
    }
    for (std::size_t order : {1u, 2u, 3u, 4u}) {
        for (double k : {0.01, 0.1, 1.0}) {
            auto lm = LanguageModel::train(corpus, {order, k, 2});
            const auto v = static_cast<LanguageModel::TokenId>(lm.vocabulary_size());
            std::vector<LanguageModel::TokenId> alphabet = {LanguageModel::kBegin, LanguageModel::kUnknown};
            for (LanguageModel::TokenId w = 0; w < v; ++w)
                alphabet.push_back(w);
            for (int trial = 0; trial < 50; ++trial) {
                std::vector<LanguageModel::TokenId> hist;
                const std::size_t len = rng() % (order + 1);
                for (std::size_t i = 0; i < len; ++i)
                    hist.push_back(alphabet[rng() % alphabet.size()]);
                double sum = 0;
                for (LanguageModel::TokenId w = 0; w < v; ++w)
                    sum += lm.probability(hist, w);
                CHECK(std::abs(sum - 1.0) < 1e-9);
            }
        }
    }
}

TEST_CASE("model agrees with a string-keyed reference")
{
    std::mt19937_64 rng(11);
    const std::vector<std::string> pool = {"the", "deal", "gas", "price", "ok", "call", "now", "x1", "y2"};
    std::vector<Message> corpus;
    std::vector<std::vector<std::string>> tokens;
    for (int i = 0; i < 80; ++i) {
        std::string body;
        const int n = static_cast<int>(rng() % 15);
        for (int j = 0; j < n; ++j)
            body += pool[rng() % pool.size()] + (j % 5 == 4 ? ". " : " ");
        corpus.push_back(msg(std::to_string(i), "a", {"b"}, 0, body));
        tokens.push_back(oracle::words(body));
    }
    // Rare words so that some tokens fall out of the vocabulary.
    corpus.push_back(msg("r", "a", {"b"}, 0, "unique once the deal"));
    tokens.push_back(oracle::words("unique once the deal"));

    for (std::size_t order : {1u, 2u, 3u}) {
        LmConfig cfg{order, 0.1, 2};
        auto lm = LanguageModel::train(corpus, cfg);
        oracle::NaiveLm ref(tokens, order, 0.1, 2);
        REQUIRE(lm.vocabulary() == ref.vocab());
        for (std::size_t i = 0; i + 5 < corpus.size(); i += 5) {
            std::vector<const Message*> batch = {&corpus[i], &corpus[i + 1], &corpus[i + 2]};
            std::vector<std::vector<std::string>> tb = {tokens[i], tokens[i + 1], tokens[i + 2]};
            auto got = perplexity_score(lm, batch);
            double want = ref.perplexity(tb);
            if (std::isnan(want)) {
                CHECK_FALSE(got);
            } else {
                REQUIRE(got);
                CHECK(*got == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("two-person fixture matches hand values")
{
    auto corpus = two_person();
    auto pairs = index_pairs(corpus);
    REQUIRE(pairs.size() == 2);
    auto lm = LanguageModel::train(corpus, {1, 1.0, 1});
    REQUIRE(lm.vocabulary_size() == 5);
    auto fm = build_feature_matrix(corpus, pairs, lm, small_lexicon());
    REQUIRE(fm.size() == 2);

    const auto& ab = fm.at({"a@x", "b@x"});
    CHECK(std::abs(*ab[Feature::frequency] - 1.0) < 1e-9);
    CHECK(std::abs(*ab[Feature::length] - 3.0) < 1e-9);
    CHECK(std::abs(*ab[Feature::quality] - std::pow(std::pow(14.0, 6) / 864.0, 1.0 / 7.0)) < 1e-9);
    CHECK(std::abs(*ab[Feature::sentiment] - 1.0 / 3.0) < 1e-9);
    CHECK(ab.flags().empty());

    const auto& ba = fm.at({"b@x", "a@x"});
    CHECK(std::abs(*ba[Feature::frequency] - 0.5) < 1e-9);
    CHECK(std::abs(*ba[Feature::length] - 1.5) < 1e-9);
    CHECK(std::abs(*ba[Feature::quality] - std::pow(std::pow(14.0, 3) / 24.0, 1.0 / 4.0)) < 1e-9);
    CHECK(std::abs(*ba[Feature::sentiment] - 0.5) < 1e-9);
}

TEST_CASE("empty bodies leave quality and sentiment undefined")
{
    std::vector<Message> corpus = {msg("1", "a@x", {"b@x"}, 0, ""), msg("2", "a@x", {"b@x"}, 1, ""),
                                   msg("3", "b@x", {"a@x"}, 0, "fine words here. good")};
    auto pairs = index_pairs(corpus);
    auto lm = LanguageModel::train(corpus, {3, 0.1, 1});
    auto fm = build_feature_matrix(corpus, pairs, lm, small_lexicon());
    CHECK(fm.size() == pairs.size());
    const auto& ab = fm.at({"a@x", "b@x"});
    CHECK(ab[Feature::frequency]);
    CHECK(*ab[Feature::length] == 0.0);
    CHECK_FALSE(ab[Feature::quality]);
    CHECK_FALSE(ab[Feature::sentiment]);
    CHECK(ab.flags() == "quality_undefined|sentiment_undefined");
    CHECK(fm.at({"b@x", "a@x"}).flags().empty());
}

TEST_CASE("features.csv round-trip")
{
    auto corpus = two_person();
    corpus.push_back(msg("5", "a@x", {"b@x"}, 3, ""));
    auto pairs = index_pairs(corpus);
    auto lm = LanguageModel::train(corpus, {2, 0.1, 1});
    auto fm = build_feature_matrix(corpus, pairs, lm, small_lexicon());
    fm[{"c@x", "d@x"}] = FeatureRow{{1.0, 0.0, std::nullopt, -0.25}};

    std::ostringstream out;
    write_features_csv(out, fm);
    std::istringstream in(out.str());
    auto back = read_features_csv(in);
    REQUIRE(back.size() == fm.size());
    for (const auto& [pair, row] : fm)
        CHECK(back.at(pair).values == row.values);

    std::istringstream bad("from,to,frequency\n");
    CHECK_THROWS_AS(read_features_csv(bad), ParseError);
}

} // TEST_SUITE
