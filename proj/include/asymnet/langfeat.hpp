#pragma once

#include <asymnet/corpus.hpp>
#include <asymnet/types.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace asymnet {

struct LmConfig {
    std::size_t order = 3;
    double k = 0.1;
    std::size_t min_count = 2;
};

/// Interpolated add-k n-gram model over a closed vocabulary.
///
/// Each order m backs off onto order m-1 through an add-k prior:
///
///   P_m(w | h) = (c(h, w) + k·V·P_{m-1}(w | h')) / (c(h) + k·V)
///   P_1(w)     = (c(w) + k) / (N + k·V)
///
/// where h' drops the oldest token of h, V is the vocabulary size and c(h)
/// counts only in-vocabulary continuations, so Σ_w P_m(w | h) = 1 for every
/// history. Histories start with a begin marker at each message and may
/// contain the unknown marker; OOV tokens are never predicted.
class LanguageModel {
public:
    using TokenId = std::uint32_t;
    static constexpr TokenId kUnknown = 0xFFFFFFFEu;
    static constexpr TokenId kBegin = 0xFFFFFFFFu;

    /// Throws Error if the corpus yields no tokens or an empty vocabulary.
    static LanguageModel train(std::span<const Message> corpus, const LmConfig& config);

    std::size_t order() const { return order_; }
    double k() const { return k_; }
    std::size_t vocabulary_size() const { return vocab_.size(); }
    const std::vector<std::string>& vocabulary() const { return vocab_; }

    /// Vocabulary id, or kUnknown.
    TokenId lookup(std::string_view token) const;

    /// P(word | history). `history` lists preceding ids oldest first; only the
    /// last order()-1 entries are used. `word` must be a vocabulary id.
    double probability(std::span<const TokenId> history, TokenId word) const;

private:
    struct Context {
        std::uint64_t total = 0;
        std::unordered_map<TokenId, std::uint64_t> next;
    };

    static std::string key(std::span<const TokenId> ids);
    double probability_at(std::span<const TokenId> context, TokenId word) const;

    std::size_t order_ = 1;
    double k_ = 0.1;
    std::vector<std::string> vocab_; // sorted
    std::unordered_map<std::string, TokenId> ids_;
    std::vector<std::uint64_t> unigram_;
    std::uint64_t unigram_total_ = 0;
    // contexts_[m] holds contexts of length m (m >= 1).
    std::vector<std::unordered_map<std::string, Context>> contexts_;
};

/// Accumulated log10 probability and counts over a token stream.
struct PerplexityStats {
    double log10_prob = 0.0;
    std::size_t words = 0;
    std::size_t oovs = 0;
};

/// Scores every body separately (history resets per message) and sums.
PerplexityStats perplexity_stats(const LanguageModel& lm, std::span<const Message* const> messages);

/// 10^(-log10prob / (words - oovs + 1)); undefined when no in-vocabulary
/// token was scored.
Maybe perplexity_score(const LanguageModel& lm, std::span<const Message* const> messages);

class SentimentLexicon {
public:
    SentimentLexicon() = default;
    /// Keys are lowercased. Throws ParseError on duplicate words.
    explicit SentimentLexicon(const std::map<std::string, double>& entries);

    /// `word<TAB>polarity` lines; '#' comments and blank lines ignored.
    static SentimentLexicon parse(std::istream& in);
    static SentimentLexicon load(const std::filesystem::path& path);

    /// Polarity of a (lowercase) token, 0 if absent.
    double polarity(std::string_view word) const;
    std::size_t size() const { return words_.size(); }

private:
    void insert(std::string word, double polarity, std::size_t line);

    std::unordered_map<std::string, double> words_;
};

/// N / max(t2 - t1, 1 day), span in fractional days.
double frequency_score(const PairStats& stats);

/// Mean token count per message. Throws std::invalid_argument on an empty list.
double length_score(std::span<const Message* const> messages);

/// Σ polarity over all tokens / number of sentences; undefined if no sentence.
Maybe sentiment_score(const SentimentLexicon& lex, std::span<const Message* const> messages);

struct FeatureRow {
    FeatureValues values{};

    Maybe operator[](Feature f) const { return values[index_of(f)]; }
    std::string flags() const; // "quality_undefined|sentiment_undefined", or ""
};

using FeatureMatrix = std::map<OrderedPair, FeatureRow>;

/// All four features of one ordered pair; `messages` are the pair's messages.
FeatureRow compute_feature_row(const PairStats& stats, std::span<const Message* const> messages,
                               const LanguageModel& lm, const SentimentLexicon& lex);

/// Features for every ordered pair of `pairs`. Pairs are computed in
/// parallel; the result does not depend on the worker count.
FeatureMatrix build_feature_matrix(std::span<const Message> corpus, const PairIndex& pairs,
                                   const LanguageModel& lm, const SentimentLexicon& lex);

namespace serial {
FeatureMatrix build_feature_matrix(std::span<const Message> corpus, const PairIndex& pairs,
                                   const LanguageModel& lm, const SentimentLexicon& lex);
}

void write_features_csv(std::ostream& out, const FeatureMatrix& fm);
FeatureMatrix read_features_csv(const std::filesystem::path& path);
FeatureMatrix read_features_csv(std::istream& in);

} // namespace asymnet
