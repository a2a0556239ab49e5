#include <asymnet/graph.hpp>

#include <asymnet/csv.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

namespace asymnet {

InteractionGraph::InteractionGraph(std::vector<std::string> names, std::span<const Edge> edges)
    : names_(std::move(names))
{
    const auto n = names_.size();
    for (std::size_t i = 0; i < n; ++i)
        if (!index_.emplace(names_[i], static_cast<VertexId>(i)).second)
            throw std::invalid_argument("duplicate vertex name '" + names_[i] + "'");

    std::vector<std::vector<VertexId>> lists(n);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v)
            throw std::invalid_argument("self-loop on '" + names_[u] + "'");
        lists[u].push_back(v);
        lists[v].push_back(u);
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& l = lists[i];
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        offsets_[i + 1] = offsets_[i] + l.size();
    }
    adj_.reserve(offsets_[n]);
    for (auto& l : lists)
        adj_.insert(adj_.end(), l.begin(), l.end());
}

InteractionGraph InteractionGraph::with_vertex_count(std::size_t n, std::span<const Edge> edges)
{
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i)
        names[i] = std::to_string(i);
    return InteractionGraph(std::move(names), edges);
}

std::span<const VertexId> InteractionGraph::neighbors(VertexId v) const
{
    if (v >= vertex_count())
        throw std::out_of_range("unknown vertex " + std::to_string(v));
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool InteractionGraph::has_edge(VertexId u, VertexId v) const
{
    auto nu = neighbors(u);
    return std::binary_search(nu.begin(), nu.end(), v);
}

std::optional<VertexId> InteractionGraph::find(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

VertexId InteractionGraph::id_of(std::string_view name) const
{
    auto v = find(name);
    if (!v)
        throw std::out_of_range("unknown vertex '" + std::string(name) + "'");
    return *v;
}

std::vector<Edge> InteractionGraph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u)
        for (VertexId v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

InteractionGraph build_graph(std::span<const UnorderedPair> pairs)
{
    std::set<std::string> names;
    for (const auto& p : pairs) {
        names.insert(p.a);
        names.insert(p.b);
    }
    std::vector<std::string> sorted(names.begin(), names.end());
    std::unordered_map<std::string_view, VertexId> id;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        id[sorted[i]] = static_cast<VertexId>(i);
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& p : pairs)
        if (p.a != p.b)
            edges.emplace_back(id[p.a], id[p.b]);
    return InteractionGraph(std::move(sorted), edges);
}

InteractionGraph build_graph(const PairIndex& pairs)
{
    std::vector<UnorderedPair> mutual;
    for (const auto& [pair, stats] : pairs)
        if (pair.from < pair.to && pairs.count(pair.reversed()))
            mutual.push_back({pair.from, pair.to});
    return build_graph(std::span<const UnorderedPair>(mutual));
}

std::size_t degree(const InteractionGraph& g, VertexId v)
{
    return g.neighbors(v).size();
}

namespace {

std::size_t sorted_intersection_size(std::span<const VertexId> a, std::span<const VertexId> b)
{
    std::size_t n = 0;
    auto i = a.begin(), j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

// Edges among v's neighbors, counted by merging sorted adjacency lists.
std::size_t neighbor_links(const InteractionGraph& g, VertexId v)
{
    auto nv = g.neighbors(v);
    std::size_t twice = 0;
    for (VertexId u : nv)
        twice += sorted_intersection_size(nv, g.neighbors(u));
    return twice / 2;
}

Maybe clustering_from(std::size_t n, std::size_t k)
{
    if (n < 2)
        return std::nullopt;
    return static_cast<double>(k) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

} // namespace

Maybe clustering_coefficient(const InteractionGraph& g, VertexId v)
{
    return clustering_from(degree(g, v), neighbor_links(g, v));
}

std::size_t embeddedness(const InteractionGraph& g, VertexId u, VertexId v)
{
    if (!g.has_edge(u, v))
        throw std::invalid_argument("embeddedness of a non-edge (" + g.name(u) + ", " + g.name(v) + ")");
    return sorted_intersection_size(g.neighbors(u), g.neighbors(v));
}

std::vector<Maybe> clustering_all(const InteractionGraph& g)
{
    const auto n = static_cast<std::ptrdiff_t>(g.vertex_count());
    std::vector<Maybe> out(g.vertex_count());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t v = 0; v < n; ++v)
        out[v] = clustering_coefficient(g, static_cast<VertexId>(v));
    return out;
}

std::vector<std::size_t> embeddedness_all(const InteractionGraph& g)
{
    const auto edges = g.edges();
    const auto n = static_cast<std::ptrdiff_t>(edges.size());
    std::vector<std::size_t> out(edges.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = sorted_intersection_size(g.neighbors(edges[i].first), g.neighbors(edges[i].second));
    return out;
}

std::vector<Triangle> enumerate_triangles(const InteractionGraph& g)
{
    // Orient each edge from lower to higher (degree, id) rank; every triangle
    // is then found exactly once at its lowest-ranked vertex.
    const auto nv = g.vertex_count();
    auto rank_less = [&](VertexId x, VertexId y) {
        auto dx = g.neighbors(x).size(), dy = g.neighbors(y).size();
        return dx != dy ? dx < dy : x < y;
    };
    std::vector<std::vector<VertexId>> out_nb(nv);
    for (VertexId u = 0; u < nv; ++u) {
        for (VertexId v : g.neighbors(u))
            if (rank_less(u, v))
                out_nb[u].push_back(v);
        // already sorted by id since neighbors() is sorted
    }

    const auto n = static_cast<std::ptrdiff_t>(nv);
    std::vector<std::vector<Triangle>> found(nv);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t ui = 0; ui < n; ++ui) {
        const auto u = static_cast<VertexId>(ui);
        const auto& ou = out_nb[u];
        for (VertexId v : ou) {
            const auto& ov = out_nb[v];
            auto i = ou.begin(), j = ov.begin();
            while (i != ou.end() && j != ov.end()) {
                if (*i < *j)
                    ++i;
                else if (*j < *i)
                    ++j;
                else {
                    VertexId t[3] = {u, v, *i};
                    std::sort(t, t + 3);
                    found[u].push_back({t[0], t[1], t[2]});
                    ++i;
                    ++j;
                }
            }
        }
    }

    std::vector<Triangle> all;
    for (auto& f : found)
        all.insert(all.end(), f.begin(), f.end());
    std::sort(all.begin(), all.end());
    return all;
}

StructureTable compute_structure(const InteractionGraph& g)
{
    StructureTable st;
    const auto clustering = clustering_all(g);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        st.vertices.push_back({g.name(v), degree(g, v), clustering[v]});
    const auto edges = g.edges();
    const auto emb = embeddedness_all(g);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto p = UnorderedPair::of(g.name(edges[i].first), g.name(edges[i].second));
        st.edges.push_back({std::move(p.a), std::move(p.b), emb[i]});
    }
    std::sort(st.vertices.begin(), st.vertices.end(),
              [](const auto& x, const auto& y) { return x.id < y.id; });
    std::sort(st.edges.begin(), st.edges.end(),
              [](const auto& x, const auto& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    return st;
}

namespace {
const std::vector<std::string> kStructureHeader = {"kind", "id", "degree", "clustering",
                                                   "a",    "b",  "embeddedness"};

StructureTable structure_from_table(const csv::Table& t)
{
    StructureTable st;
    for (const auto& r : t.rows()) {
        const auto& f = r.fields;
        if (f[0] == "vertex")
            st.vertices.push_back({f[1], csv::parse_count(f[2], r.line), csv::parse_maybe(f[3], r.line)});
        else if (f[0] == "edge")
            st.edges.push_back({f[4], f[5], csv::parse_count(f[6], r.line)});
        else
            throw ParseError("unknown row kind '" + f[0] + "'", r.line);
    }
    return st;
}
} // namespace

void write_structure_csv(std::ostream& out, const StructureTable& st)
{
    csv::Writer w(out);
    w.row(kStructureHeader);
    for (const auto& v : st.vertices)
        w.row({"vertex", v.id, std::to_string(v.degree), csv::format_maybe(v.clustering), "", "", ""});
    for (const auto& e : st.edges)
        w.row({"edge", "", "", "", e.a, e.b, std::to_string(e.embeddedness)});
}

StructureTable read_structure_csv(std::istream& in)
{
    return structure_from_table(csv::Table::read(in, kStructureHeader));
}

StructureTable read_structure_csv(const std::filesystem::path& path)
{
    return structure_from_table(csv::Table::read_file(path, kStructureHeader));
}

} // namespace asymnet
