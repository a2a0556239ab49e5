#include <asymnet/langfeat.hpp>

#include "internal.hpp"

#include <asymnet/csv.hpp>
#include <asymnet/text.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace asymnet {

// --- language model ---------------------------------------------------------

std::string LanguageModel::key(std::span<const TokenId> ids)
{
    return std::string(reinterpret_cast<const char*>(ids.data()), ids.size_bytes());
}

LanguageModel LanguageModel::train(std::span<const Message> corpus, const LmConfig& config)
{
    if (config.order < 1)
        throw std::invalid_argument("language model order must be >= 1");
    if (!(config.k > 0.0))
        throw std::invalid_argument("language model k must be > 0");

    std::unordered_map<std::string, std::uint64_t> counts;
    for (const auto& m : corpus)
        text::for_each_token(m.body, [&](std::string_view t) { ++counts[std::string(t)]; });
    if (counts.empty())
        throw Error("cannot train language model: corpus has no tokens");

    LanguageModel lm;
    lm.order_ = config.order;
    lm.k_ = config.k;
    for (const auto& [word, c] : counts)
        if (c >= config.min_count)
            lm.vocab_.push_back(word);
    if (lm.vocab_.empty())
        throw Error("cannot train language model: no token reaches min_count");
    std::sort(lm.vocab_.begin(), lm.vocab_.end());
    for (std::size_t i = 0; i < lm.vocab_.size(); ++i)
        lm.ids_.emplace(lm.vocab_[i], static_cast<TokenId>(i));

    lm.unigram_.assign(lm.vocab_.size(), 0);
    lm.contexts_.resize(lm.order_);

    const std::size_t hist_len = lm.order_ - 1;
    std::vector<TokenId> history;
    for (const auto& m : corpus) {
        history.assign(hist_len, kBegin);
        text::for_each_token(m.body, [&](std::string_view t) {
            TokenId w = lm.lookup(t);
            if (w != kUnknown) {
                ++lm.unigram_[w];
                ++lm.unigram_total_;
                for (std::size_t len = 1; len <= hist_len; ++len) {
                    std::span<const TokenId> ctx(history.data() + hist_len - len, len);
                    auto& c = lm.contexts_[len][key(ctx)];
                    ++c.total;
                    ++c.next[w];
                }
            }
            if (hist_len > 0) {
                std::rotate(history.begin(), history.begin() + 1, history.end());
                history.back() = w;
            }
        });
    }
    return lm;
}

LanguageModel::TokenId LanguageModel::lookup(std::string_view token) const
{
    auto it = ids_.find(std::string(token));
    return it == ids_.end() ? kUnknown : it->second;
}

double LanguageModel::probability_at(std::span<const TokenId> context, TokenId word) const
{
    const double kv = k_ * static_cast<double>(vocab_.size());
    if (context.empty())
        return (static_cast<double>(unigram_[word]) + k_) / (static_cast<double>(unigram_total_) + kv);

    const double lower = probability_at(context.subspan(1), word);
    const auto& level = contexts_[context.size()];
    auto it = level.find(key(context));
    if (it == level.end())
        return lower;
    const auto& ctx = it->second;
    auto hit = ctx.next.find(word);
    const double c_hw = hit == ctx.next.end() ? 0.0 : static_cast<double>(hit->second);
    return (c_hw + kv * lower) / (static_cast<double>(ctx.total) + kv);
}

double LanguageModel::probability(std::span<const TokenId> history, TokenId word) const
{
    if (word >= vocab_.size())
        throw std::out_of_range("probability() needs an in-vocabulary token");
    const std::size_t hist_len = order_ - 1;
    if (history.size() >= hist_len)
        return probability_at(history.last(hist_len), word);
    std::vector<TokenId> padded(hist_len - history.size(), kBegin);
    padded.insert(padded.end(), history.begin(), history.end());
    return probability_at(padded, word);
}

PerplexityStats perplexity_stats(const LanguageModel& lm, std::span<const Message* const> messages)
{
    PerplexityStats st;
    const std::size_t hist_len = lm.order() - 1;
    std::vector<LanguageModel::TokenId> history;
    for (const Message* m : messages) {
        history.assign(hist_len, LanguageModel::kBegin);
        text::for_each_token(m->body, [&](std::string_view t) {
            ++st.words;
            auto w = lm.lookup(t);
            if (w == LanguageModel::kUnknown)
                ++st.oovs;
            else
                st.log10_prob += std::log10(lm.probability(history, w));
            if (hist_len > 0) {
                std::rotate(history.begin(), history.begin() + 1, history.end());
                history.back() = w;
            }
        });
    }
    return st;
}

Maybe perplexity_score(const LanguageModel& lm, std::span<const Message* const> messages)
{
    auto st = perplexity_stats(lm, messages);
    if (st.words == st.oovs)
        return std::nullopt;
    return std::pow(10.0, -st.log10_prob / static_cast<double>(st.words - st.oovs + 1));
}

// --- sentiment lexicon --------------------------------------------------------

SentimentLexicon::SentimentLexicon(const std::map<std::string, double>& entries)
{
    for (const auto& [w, p] : entries)
        insert(w, p, 0);
}

void SentimentLexicon::insert(std::string word, double polarity, std::size_t line)
{
    for (auto& c : word)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!words_.emplace(std::move(word), polarity).second)
        throw ParseError("duplicate lexicon word", line);
}

SentimentLexicon SentimentLexicon::parse(std::istream& in)
{
    SentimentLexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        auto tab = line.find('\t', first);
        if (tab == std::string::npos)
            throw ParseError("lexicon line needs word<TAB>polarity", line_no);
        auto word = line.substr(first, tab - first);
        while (!word.empty() && word.back() == ' ')
            word.pop_back();
        std::string_view pol(line);
        pol.remove_prefix(tab + 1);
        while (!pol.empty() && (pol.front() == ' ' || pol.front() == '\t'))
            pol.remove_prefix(1);
        while (!pol.empty() && (pol.back() == ' ' || pol.back() == '\t'))
            pol.remove_suffix(1);
        if (word.empty())
            throw ParseError("empty lexicon word", line_no);
        lex.insert(std::move(word), csv::parse_double(pol, line_no), line_no);
    }
    return lex;
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open lexicon " + path.string());
    try {
        return parse(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.message, e.line);
    }
}

double SentimentLexicon::polarity(std::string_view word) const
{
    auto it = words_.find(std::string(word));
    return it == words_.end() ? 0.0 : it->second;
}

// --- per-pair features ----------------------------------------------------------

double frequency_score(const PairStats& stats)
{
    if (stats.count < 1)
        throw std::invalid_argument("frequency_score needs at least one message");
    using fdays = std::chrono::duration<double, std::ratio<86400>>;
    double span = std::chrono::duration_cast<fdays>(stats.last - stats.first).count();
    return static_cast<double>(stats.count) / std::max(span, 1.0);
}

double length_score(std::span<const Message* const> messages)
{
    if (messages.empty())
        throw std::invalid_argument("length_score needs at least one message");
    std::size_t words = 0;
    for (const Message* m : messages)
        words += text::count_tokens(m->body);
    return static_cast<double>(words) / static_cast<double>(messages.size());
}

Maybe sentiment_score(const SentimentLexicon& lex, std::span<const Message* const> messages)
{
    double polarity = 0.0;
    std::size_t sentences = 0;
    for (const Message* m : messages) {
        sentences += text::count_sentences(m->body);
        text::for_each_token(m->body, [&](std::string_view t) { polarity += lex.polarity(t); });
    }
    if (sentences == 0)
        return std::nullopt;
    return polarity / static_cast<double>(sentences);
}

std::string FeatureRow::flags() const
{
    std::string out;
    for (Feature f : kFeatures) {
        if (values[index_of(f)])
            continue;
        if (!out.empty())
            out += '|';
        out += to_string(f);
        out += "_undefined";
    }
    return out;
}

FeatureRow compute_feature_row(const PairStats& stats, std::span<const Message* const> messages,
                               const LanguageModel& lm, const SentimentLexicon& lex)
{
    FeatureRow row;
    row.values[index_of(Feature::frequency)] = frequency_score(stats);
    row.values[index_of(Feature::length)] = length_score(messages);
    row.values[index_of(Feature::quality)] = perplexity_score(lm, messages);
    row.values[index_of(Feature::sentiment)] = sentiment_score(lex, messages);
    return row;
}

namespace detail {

MessageLookup index_messages(std::span<const Message> corpus)
{
    MessageLookup lookup;
    lookup.reserve(corpus.size());
    for (const auto& m : corpus)
        lookup[m.id] = &m;
    return lookup;
}

std::vector<const Message*> pair_messages(const MessageLookup& lookup, const PairStats& stats)
{
    std::vector<const Message*> out;
    out.reserve(stats.message_ids.size());
    for (const auto& id : stats.message_ids) {
        auto it = lookup.find(id);
        if (it == lookup.end())
            throw Error("pair index refers to unknown message id '" + id + "'");
        out.push_back(it->second);
    }
    return out;
}

} // namespace detail

FeatureMatrix build_feature_matrix(std::span<const Message> corpus, const PairIndex& pairs,
                                   const LanguageModel& lm, const SentimentLexicon& lex)
{
    const auto lookup = detail::index_messages(corpus);
    std::vector<const PairIndex::value_type*> work;
    work.reserve(pairs.size());
    for (const auto& entry : pairs)
        work.push_back(&entry);

    const auto n = static_cast<std::ptrdiff_t>(work.size());
    std::vector<FeatureRow> rows(work.size());
    std::vector<std::string> errors(work.size());

#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            auto msgs = detail::pair_messages(lookup, work[i]->second);
            rows[i] = compute_feature_row(work[i]->second, msgs, lm, lex);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }

    FeatureMatrix fm;
    for (std::size_t i = 0; i < work.size(); ++i) {
        if (!errors[i].empty())
            throw Error(errors[i]);
        fm.emplace_hint(fm.end(), work[i]->first, rows[i]);
    }
    return fm;
}

// --- features.csv ---------------------------------------------------------------

namespace {
const std::vector<std::string> kFeatureHeader = {"from",    "to",        "frequency", "length",
                                                 "quality", "sentiment", "flags"};
}

void write_features_csv(std::ostream& out, const FeatureMatrix& fm)
{
    csv::Writer w(out);
    w.row(kFeatureHeader);
    for (const auto& [pair, row] : fm) {
        std::vector<std::string> fields = {pair.from, pair.to};
        for (Feature f : kFeatures)
            fields.push_back(csv::format_maybe(row[f]));
        fields.push_back(row.flags());
        w.row(fields);
    }
}

namespace {
FeatureMatrix features_from_table(const csv::Table& t)
{
    FeatureMatrix fm;
    for (const auto& r : t.rows()) {
        FeatureRow row;
        for (std::size_t i = 0; i < kFeatures.size(); ++i)
            row.values[i] = csv::parse_maybe(r.fields[2 + i], r.line);
        if (!fm.emplace(OrderedPair{r.fields[0], r.fields[1]}, row).second)
            throw ParseError("duplicate pair " + r.fields[0] + " -> " + r.fields[1], r.line);
    }
    return fm;
}
} // namespace

FeatureMatrix read_features_csv(std::istream& in)
{
    return features_from_table(csv::Table::read(in, kFeatureHeader));
}

FeatureMatrix read_features_csv(const std::filesystem::path& path)
{
    return features_from_table(csv::Table::read_file(path, kFeatureHeader));
}

} // namespace asymnet
