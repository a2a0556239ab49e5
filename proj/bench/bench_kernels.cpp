// Serial reference kernels against their OpenMP counterparts on synthetic inputs.

#include <asymnet/balance.hpp>
#include <asymnet/graph.hpp>
#include <asymnet/langfeat.hpp>
#include <asymnet/normalize.hpp>

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

using namespace asymnet;

namespace {

std::vector<std::string> names(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back("p" + std::to_string(100000 + i) + "@bench.org");
    return out;
}

// Sparse random graph with mean degree about `mean_degree`.
InteractionGraph random_graph(std::size_t n, double mean_degree, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<Edge> edges;
    const auto m = static_cast<std::size_t>(static_cast<double>(n) * mean_degree / 2.0);
    for (std::size_t i = 0; i < m; ++i) {
        auto u = pick(rng), v = pick(rng);
        if (u != v)
            edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return InteractionGraph(names(n), edges);
}

const InteractionGraph& graph()
{
    static const InteractionGraph g = random_graph(4000, 40.0, 1);
    return g;
}

const NormalizedMatrix& matrix()
{
    static const NormalizedMatrix nm = [] {
        std::mt19937_64 rng(2);
        std::normal_distribution<double> d(0.0, 0.5);
        NormalizedMatrix out;
        const auto& g = graph();
        for (auto [u, v] : g.edges())
            for (Feature f : kFeatures) {
                out.set({g.name(u), g.name(v)}, f, {1.0, 1.0, d(rng)});
                out.set({g.name(v), g.name(u)}, f, {1.0, 1.0, d(rng)});
            }
        return out;
    }();
    return nm;
}

struct Corpus {
    std::vector<Message> messages;
    PairIndex pairs;
    LanguageModel lm;
    SentimentLexicon lex;
};

const Corpus& corpus()
{
    static const Corpus c = [] {
        const std::vector<std::string> words = {"meeting", "deal", "great", "bad", "price", "gas",
                                                "power", "today", "call", "thanks", "risk", "good"};
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<std::size_t> w(0, words.size() - 1), len(3, 60), day(0, 700);
        auto g = random_graph(300, 8.0, 4);
        std::vector<Message> ms;
        for (auto [u, v] : g.edges())
            for (int dir = 0; dir < 2; ++dir)
                for (int i = 0; i < 20; ++i) {
                    std::string body;
                    for (std::size_t t = len(rng); t > 0; --t)
                        body += words[w(rng)] + (t % 9 == 0 ? ". " : " ");
                    const auto& from = g.name(dir ? v : u);
                    const auto& to = g.name(dir ? u : v);
                    ms.push_back({std::to_string(ms.size()), from, {to},
                                  Timestamp{std::chrono::hours{24 * static_cast<long long>(day(rng))}}, body});
                }
        auto filtered = filter_corpus(ms, "", 1);
        auto lm = LanguageModel::train(filtered.messages, {});
        SentimentLexicon lex({{"great", 2}, {"good", 1}, {"thanks", 1}, {"bad", -1}, {"risk", -1}});
        return Corpus{std::move(filtered.messages), std::move(filtered.pairs), std::move(lm), std::move(lex)};
    }();
    return c;
}

void BM_clustering_serial(benchmark::State& s)
{
    for (auto _ : s)
        benchmark::DoNotOptimize(serial::clustering_all(graph()));
}
void BM_clustering_omp(benchmark::State& s)
{
    for (auto _ : s)
        benchmark::DoNotOptimize(clustering_all(graph()));
}
void BM_embeddedness_serial(benchmark::State& s)
{
    for (auto _ : s)
        benchmark::DoNotOptimize(serial::embeddedness_all(graph()));
}
void BM_embeddedness_omp(benchmark::State& s)
{
    for (auto _ : s)
        benchmark::DoNotOptimize(embeddedness_all(graph()));
}
void BM_triangles_serial(benchmark::State& s)
{
    for (auto _ : s)
        benchmark::DoNotOptimize(serial::enumerate_triangles(graph()));
}
void BM_triangles_omp(benchmark::State& s)
{
    for (auto _ : s)
        benchmark::DoNotOptimize(enumerate_triangles(graph()));
}

void BM_features_serial(benchmark::State& s)
{
    const auto& c = corpus();
    for (auto _ : s)
        benchmark::DoNotOptimize(serial::build_feature_matrix(c.messages, c.pairs, c.lm, c.lex));
}
void BM_features_omp(benchmark::State& s)
{
    const auto& c = corpus();
    for (auto _ : s)
        benchmark::DoNotOptimize(build_feature_matrix(c.messages, c.pairs, c.lm, c.lex));
}

void curve(benchmark::State& s, bool parallel)
{
    const auto mode = s.range(0) ? BalanceMode::extended : BalanceMode::traditional;
    const auto sweep = auto_sweep(matrix(), Feature::length, mode, 11);
    for (auto _ : s)
        benchmark::DoNotOptimize(parallel ? balance_curve(graph(), matrix(), Feature::length, mode, sweep)
                                          : serial::balance_curve(graph(), matrix(), Feature::length, mode, sweep));
}
void BM_curve_serial(benchmark::State& s) { curve(s, false); }
void BM_curve_omp(benchmark::State& s) { curve(s, true); }

} // namespace

BENCHMARK(BM_clustering_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_clustering_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_embeddedness_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_embeddedness_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_triangles_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_triangles_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_features_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_features_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_curve_serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_curve_omp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
