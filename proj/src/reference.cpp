// Single-threaded reference kernels. They favour the most literal reading of
// each definition over speed and back the parallel versions in tests and
// benchmarks.

#include <asymnet/graph.hpp>
#include <asymnet/langfeat.hpp>

#include "internal.hpp"

#include <algorithm>

namespace asymnet::serial {

std::vector<Maybe> clustering_all(const InteractionGraph& g)
{
    std::vector<Maybe> out(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto nb = g.neighbors(v);
        if (nb.size() < 2)
            continue;
        std::size_t links = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                links += g.has_edge(nb[i], nb[j]);
        const double pairs = static_cast<double>(nb.size()) * static_cast<double>(nb.size() - 1) / 2.0;
        out[v] = static_cast<double>(links) / pairs;
    }
    return out;
}

std::vector<std::size_t> embeddedness_all(const InteractionGraph& g)
{
    std::vector<std::size_t> out;
    for (auto [u, v] : g.edges()) {
        std::size_t common = 0;
        for (VertexId w : g.neighbors(u))
            common += g.has_edge(v, w);
        out.push_back(common);
    }
    return out;
}

std::vector<Triangle> enumerate_triangles(const InteractionGraph& g)
{
    std::vector<Triangle> out;
    for (auto [u, v] : g.edges())
        for (VertexId w : g.neighbors(v))
            if (w > v && g.has_edge(u, w))
                out.push_back({u, v, w});
    std::sort(out.begin(), out.end());
    return out;
}

FeatureMatrix build_feature_matrix(std::span<const Message> corpus, const PairIndex& pairs,
                                   const LanguageModel& lm, const SentimentLexicon& lex)
{
    const auto lookup = detail::index_messages(corpus);
    FeatureMatrix fm;
    for (const auto& [pair, stats] : pairs)
        fm.emplace(pair, compute_feature_row(stats, detail::pair_messages(lookup, stats), lm, lex));
    return fm;
}

} // namespace asymnet::serial
