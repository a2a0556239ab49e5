#pragma once

#include <asymnet/corpus.hpp>
#include <asymnet/types.hpp>

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace asymnet {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Three mutually adjacent vertices, a < b < c.
struct Triangle {
    VertexId a = 0;
    VertexId b = 0;
    VertexId c = 0;

    auto operator<=>(const Triangle&) const = default;
};

/// Undirected simple graph in CSR form with sorted neighbor lists.
/// Immutable once built; all queries are safe to call concurrently.
class InteractionGraph {
public:
    InteractionGraph() = default;

    /// Vertex ids follow the order of `names`. Duplicate edges are merged;
    /// self-loops and out-of-range endpoints throw std::invalid_argument.
    InteractionGraph(std::vector<std::string> names, std::span<const Edge> edges);

    /// Vertices named "0" .. "n-1".
    static InteractionGraph with_vertex_count(std::size_t n, std::span<const Edge> edges);

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t edge_count() const { return adj_.size() / 2; }

    std::span<const VertexId> neighbors(VertexId v) const;
    bool has_edge(VertexId u, VertexId v) const;

    const std::string& name(VertexId v) const { return names_.at(v); }
    std::optional<VertexId> find(std::string_view name) const;
    /// Throws std::out_of_range for unknown names.
    VertexId id_of(std::string_view name) const;

    /// Every edge once as (u, v) with u < v, sorted.
    std::vector<Edge> edges() const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VertexId> index_;
    std::vector<std::size_t> offsets_{0};
    std::vector<VertexId> adj_;
};

/// One vertex per individual (ids in sorted name order), one edge per mutual pair.
InteractionGraph build_graph(const PairIndex& pairs);
InteractionGraph build_graph(std::span<const UnorderedPair> pairs);

/// Throws std::out_of_range for an unknown vertex.
std::size_t degree(const InteractionGraph& g, VertexId v);

/// k / C(n, 2) with n = degree and k = edges among the neighbors;
/// undefined for n < 2.
Maybe clustering_coefficient(const InteractionGraph& g, VertexId v);

/// |N(u) ∩ N(v)|. Throws std::invalid_argument if {u, v} is not an edge.
std::size_t embeddedness(const InteractionGraph& g, VertexId u, VertexId v);

// Whole-graph kernels (OpenMP). Output is independent of the thread count.

std::vector<Maybe> clustering_all(const InteractionGraph& g);
/// Aligned with g.edges().
std::vector<std::size_t> embeddedness_all(const InteractionGraph& g);
/// Every triangle once, sorted.
std::vector<Triangle> enumerate_triangles(const InteractionGraph& g);

// Straightforward single-threaded versions of the kernels above, kept as
// references for tests and benchmarks.
namespace serial {
std::vector<Maybe> clustering_all(const InteractionGraph& g);
std::vector<std::size_t> embeddedness_all(const InteractionGraph& g);
std::vector<Triangle> enumerate_triangles(const InteractionGraph& g);
} // namespace serial

struct VertexMetrics {
    std::string id;
    std::size_t degree = 0;
    Maybe clustering;

    bool operator==(const VertexMetrics&) const = default;
};

struct EdgeMetrics {
    std::string a; // a < b
    std::string b;
    std::size_t embeddedness = 0;

    bool operator==(const EdgeMetrics&) const = default;
};

/// Structural context of every vertex and edge, sorted by name.
struct StructureTable {
    std::vector<VertexMetrics> vertices;
    std::vector<EdgeMetrics> edges;

    bool operator==(const StructureTable&) const = default;
};

StructureTable compute_structure(const InteractionGraph& g);

void write_structure_csv(std::ostream& out, const StructureTable& st);
StructureTable read_structure_csv(std::istream& in);
StructureTable read_structure_csv(const std::filesystem::path& path);

} // namespace asymnet
